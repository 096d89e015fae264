#include "qmap/stencil.hpp"

#include "qmap/baston.hpp"
#include "qmap/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace qmap {
namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<Rational>>& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
    for (std::size_t p = 0; p < m.size(); ++p)
        for (std::size_t q = 0; q < m.size(); ++q)
            out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = m[p][q].get_d();
    return out;
}

std::vector<std::vector<Rational>> exact_matrix(const HyperhermitianQ& a) {
    const std::size_t n = a.n(), d = 4 * n;
    std::vector<std::vector<Rational>> s(d, std::vector<Rational>(d));
    const std::vector<Rational> origin(d, Rational(0));
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) {
            RealPoly m(d);
            Monomial e(d, 0);
            ++e[p];
            ++e[q];
            m.add_term(e, Rational(1));
            const Rational value = delta_a_apply(a, m).evaluate(origin);
            s[p][q] = s[q][p] = value / 2;
        }

    // Raw coefficient table R_pq = 1/2 Re(a_kj e_a conj(e_b)), p = 4j + a, q = 4k + b.
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) {
            const QuatQ unit = QuatQ::unit(static_cast<int>(p % 4)) * QuatQ::unit(static_cast<int>(q % 4)).conj();
            const Rational raw = Rational((a(q / 4, p / 4) * unit).w / 2);
            const Rational mirror = Rational(
                (a(p / 4, q / 4) *
                 (QuatQ::unit(static_cast<int>(q % 4)) * QuatQ::unit(static_cast<int>(p % 4)).conj()))
                    .w /
                2);
            if (raw != mirror) throw PreconditionError("delta_a_real_matrix: coefficient table is not symmetric");
            if (raw != s[p][q])
                throw PreconditionError("delta_a_real_matrix: monomial extraction disagrees with the coefficient table");
        }
    return s;
}

// Exact S for the basis of hyperhermitian n x n matrices: E_jj, then for each
// j < k the four units placed at (j, k) with conjugate at (k, j).
struct Basis {
    std::vector<Eigen::MatrixXd> diag;
    std::vector<std::array<Eigen::MatrixXd, 4>> off;  // indexed by pair (j, k), j < k
};

const Basis& basis_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, Basis> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Basis b;
    for (std::size_t j = 0; j < n; ++j) {
        QuatMatrix<Rational> m(n);
        m(j, j) = QuatQ(Rational(1));
        b.diag.push_back(to_eigen(exact_matrix(HyperhermitianQ::from(m))));
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            std::array<Eigen::MatrixXd, 4> units;
            for (int c = 0; c < 4; ++c) {
                QuatMatrix<Rational> m(n);
                m(j, k) = QuatQ::unit(c);
                m(k, j) = QuatQ::unit(c).conj();
                units[static_cast<std::size_t>(c)] = to_eigen(exact_matrix(HyperhermitianQ::from(m)));
            }
            b.off.push_back(std::move(units));
        }
    return cache.emplace(n, std::move(b)).first->second;
}

bool primitive(const std::vector<int>& v) {
    int g = 0;
    for (int x : v) g = std::gcd(g, std::abs(x));
    return g == 1;
}

}  // namespace

Eigen::MatrixXd delta_a_real_matrix(const HyperhermitianQ& a) { return to_eigen(exact_matrix(a)); }

Eigen::MatrixXd delta_a_real_matrix(const HyperhermitianD& a) {
    const std::size_t n = a.n();
    const Basis& b = basis_for(n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(4 * n), static_cast<Eigen::Index>(4 * n));
    for (std::size_t j = 0; j < n; ++j) s += a(j, j).w * b.diag[j];
    std::size_t pair = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k, ++pair)
            for (int c = 0; c < 4; ++c) s += a(j, k)[c] * b.off[pair][static_cast<std::size_t>(c)];
    return s;
}

const std::vector<std::vector<int>>& lattice_directions(std::size_t dim, int budget) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(dim, budget);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> v(dim, -budget);
    for (;;) {
        const auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
        if (first != v.end() && *first > 0 && primitive(v)) out.push_back(v);
        std::size_t i = dim;
        while (i > 0 && v[i - 1] == budget) v[--i] = -budget;
        if (i == 0) break;
        ++v[i - 1];
    }
    return cache.emplace(key, std::move(out)).first->second;
}

OperatorSample build_stencil(const Eigen::MatrixXd& S, double h, const StencilOptions& options) {
    if (options.budget < 1) throw PreconditionError("stencil budget must be at least 1");
    const auto dim = static_cast<std::size_t>(S.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    if (lambda.minCoeff() < -1e-10 * scale) throw PreconditionError("build_stencil: S is not positive semidefinite");

    const auto& candidates = lattice_directions(dim, options.budget);
    OperatorSample out;
    out.S = S;
    std::map<std::vector<int>, double> merged;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) <= 1e-12 * scale) continue;
        const Eigen::VectorXd e = eig.eigenvectors().col(k);
        double best = -1.0;
        const std::vector<int>* pick = nullptr;
        for (const auto& v : candidates) {
            double dot = 0.0, len = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                dot += v[i] * e(static_cast<Eigen::Index>(i));
                len += v[i] * v[i];
            }
            const double c = std::abs(dot) / std::sqrt(len);
            if (c > best + 1e-12) {
                best = c;
                pick = &v;
            }
        }
        const double angle = std::acos(std::min(1.0, best));
        if (angle > options.angle_tolerance)
            throw PreconditionError("build_stencil: direction budget " + std::to_string(options.budget) +
                                    " cannot represent S within the angular tolerance");
        out.consistency_error = std::max(out.consistency_error, angle);
        merged[*pick] += lambda(k);
    }
    for (auto& [v, lam] : merged) {
        double len2 = 0.0;
        for (int x : v) len2 += x * x;
        out.arms.push_back({v, lam, lam / (len2 * h * h)});
    }
    return out;
}

std::vector<OperatorSample> make_operator_samples(const std::vector<HyperhermitianD>& directions, double h,
                                                  const StencilOptions& options) {
    std::vector<OperatorSample> out;
    for (const auto& a : directions) {
        OperatorSample s = build_stencil(delta_a_real_matrix(a), h, options);
        s.a = a;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const OperatorSample& o) {
            if (o.arms.size() != s.arms.size()) return false;
            for (std::size_t i = 0; i < o.arms.size(); ++i)
                if (o.arms[i].v != s.arms[i].v || std::abs(o.arms[i].lambda - s.arms[i].lambda) > 1e-14)
                    return false;
            return true;
        });
        if (!seen) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace qmap
