#include "qmap/hyperhermitian.hpp"

namespace qmap {

std::vector<std::array<GaussRational, 2>> embed_tau(std::span<const QuatQ> q) {
    std::vector<std::array<GaussRational, 2>> z(2 * q.size());
    for (std::size_t l = 0; l < q.size(); ++l) {
        const QuatQ& v = q[l];
        z[2 * l] = {GaussRational(v.w, -v.x), GaussRational(-v.y, v.z)};
        z[2 * l + 1] = {GaussRational(v.y, v.z), GaussRational(v.w, v.x)};
    }
    return z;
}

std::vector<std::vector<GaussRational>> complex_representation(const QuatMatrix<Rational>& m) {
    const std::size_t n = m.n();
    std::vector<std::vector<GaussRational>> c(2 * n, std::vector<GaussRational>(2 * n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const QuatQ& q = m(j, k);
            const GaussRational z1(q.w, q.x), z2(q.y, q.z);
            c[2 * j][2 * k] = z1;
            c[2 * j][2 * k + 1] = z2;
            c[2 * j + 1][2 * k] = -z2.conj();
            c[2 * j + 1][2 * k + 1] = z1.conj();
        }
    return c;
}

Eigen::MatrixXcd complex_representation(const QuatMatrix<double>& m) {
    const auto n = static_cast<Eigen::Index>(m.n());
    Eigen::MatrixXcd c(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const QuatD& q = m(j, k);
            const std::complex<double> z1(q.w, q.x), z2(q.y, q.z);
            c(2 * j, 2 * k) = z1;
            c(2 * j, 2 * k + 1) = z2;
            c(2 * j + 1, 2 * k) = -std::conj(z2);
            c(2 * j + 1, 2 * k + 1) = std::conj(z1);
        }
    return c;
}

GaussRational complex_det(std::vector<std::vector<GaussRational>> a) {
    const std::size_t n = a.size();
    GaussRational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && is_zero(a[pivot][col])) ++pivot;
        if (pivot == n) return GaussRational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(a[r][col])) continue;
            const GaussRational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

HyperhermitianD to_double(const HyperhermitianQ& h) {
    QuatMatrix<double> m(h.n());
    for (std::size_t j = 0; j < h.n(); ++j)
        for (std::size_t k = 0; k < h.n(); ++k) m(j, k) = to_double(h(j, k));
    return HyperhermitianD::from(std::move(m));
}

}  // namespace qmap
