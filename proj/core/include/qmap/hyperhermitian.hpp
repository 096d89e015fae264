#pragma once

#include "qmap/error.hpp"
#include "qmap/quaternion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace qmap {

/// Dense n x n quaternion matrix, row-major.
template <class T>
class QuatMatrix {
public:
    QuatMatrix() = default;
    explicit QuatMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    std::size_t n() const { return n_; }
    const Quaternion<T>& operator()(std::size_t j, std::size_t k) const { return entries_[j * n_ + k]; }
    Quaternion<T>& operator()(std::size_t j, std::size_t k) { return entries_[j * n_ + k]; }

    QuatMatrix conj_transpose() const {
        QuatMatrix out(n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) out(j, k) = (*this)(k, j).conj();
        return out;
    }

    friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
        QuatMatrix out(a.n_);
        for (std::size_t j = 0; j < a.n_; ++j)
            for (std::size_t k = 0; k < a.n_; ++k)
                for (std::size_t l = 0; l < a.n_; ++l) out(j, k) += a(j, l) * b(l, k);
        return out;
    }
    friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

    QuatMatrix leading_block(std::size_t k) const {
        QuatMatrix out(k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<Quaternion<T>> entries_;
};

namespace detail {
inline double hyperhermitian_slack(const double& a) { return std::abs(a); }
inline double hyperhermitian_slack(const Rational& a) { return is_zero(a) ? 0.0 : 1.0; }
}  // namespace detail

/// Moore determinant of an arbitrary square quaternion matrix: each
/// permutation is split into disjoint cycles, every cycle starts at its
/// smallest index and cycles are ordered by decreasing leading index; the
/// entries are multiplied in that order. Real whenever the input is
/// hyperhermitian.
template <class T>
Quaternion<T> moore_det_raw(const QuatMatrix<T>& m) {
    const std::size_t n = m.n();
    if (n == 0) return Quaternion<T>(T(1));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Quaternion<T> total;
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<char> seen(n);
    do {
        cycles.clear();
        std::fill(seen.begin(), seen.end(), 0);
        int transpositions = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (seen[s]) continue;
            std::vector<std::size_t> cycle{s};
            seen[s] = 1;
            for (std::size_t t = perm[s]; t != s; t = perm[t]) {
                cycle.push_back(t);
                seen[t] = 1;
            }
            transpositions += static_cast<int>(cycle.size()) - 1;
            cycles.push_back(std::move(cycle));
        }
        std::reverse(cycles.begin(), cycles.end());
        Quaternion<T> prod(T(1));
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) prod = prod * m(c[i], c[(i + 1) % c.size()]);
        if (transpositions % 2) total -= prod;
        else total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// n x n quaternionic matrix with H(j,k) = conj(H(k,j)).
template <class T>
class HyperhermitianMatrix {
public:
    HyperhermitianMatrix() = default;

    /// Validates the hyperhermitian symmetry (exactly for Rational, within
    /// `tol` for double).
    static HyperhermitianMatrix from(QuatMatrix<T> m, double tol = 1e-12) {
        for (std::size_t j = 0; j < m.n(); ++j)
            for (std::size_t k = j; k < m.n(); ++k) {
                const Quaternion<T> d = m(j, k) - m(k, j).conj();
                for (int c = 0; c < 4; ++c)
                    if (detail::hyperhermitian_slack(d[c]) > tol)
                        throw PreconditionError("matrix is not hyperhermitian");
            }
        HyperhermitianMatrix h;
        h.m_ = std::move(m);
        return h;
    }

    static HyperhermitianMatrix identity(std::size_t n) {
        QuatMatrix<T> m(n);
        for (std::size_t j = 0; j < n; ++j) m(j, j) = Quaternion<T>(T(1));
        HyperhermitianMatrix h;
        h.m_ = std::move(m);
        return h;
    }

    static HyperhermitianMatrix diagonal(std::span<const T> d) {
        QuatMatrix<T> m(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) m(j, j) = Quaternion<T>(d[j]);
        HyperhermitianMatrix h;
        h.m_ = std::move(m);
        return h;
    }

    /// g^H g, positive semidefinite by construction.
    static HyperhermitianMatrix gram(const QuatMatrix<T>& g) {
        HyperhermitianMatrix h;
        h.m_ = g.conj_transpose() * g;
        for (std::size_t j = 0; j < h.n(); ++j) {  // strip round-off on the diagonal
            auto& d = h.m_(j, j);
            d = Quaternion<T>(d.w);
        }
        return h;
    }

    std::size_t n() const { return m_.n(); }
    const Quaternion<T>& operator()(std::size_t j, std::size_t k) const { return m_(j, k); }
    const QuatMatrix<T>& matrix() const { return m_; }

    HyperhermitianMatrix scaled(const T& s) const {
        HyperhermitianMatrix out = *this;
        for (std::size_t j = 0; j < n(); ++j)
            for (std::size_t k = 0; k < n(); ++k) out.m_(j, k) = m_(j, k) * s;
        return out;
    }

    friend HyperhermitianMatrix operator+(const HyperhermitianMatrix& a, const HyperhermitianMatrix& b) {
        HyperhermitianMatrix out = a;
        for (std::size_t j = 0; j < a.n(); ++j)
            for (std::size_t k = 0; k < a.n(); ++k) out.m_(j, k) += b(j, k);
        return out;
    }
    friend bool operator==(const HyperhermitianMatrix&, const HyperhermitianMatrix&) = default;

private:
    QuatMatrix<T> m_;
};

using HyperhermitianQ = HyperhermitianMatrix<Rational>;
using HyperhermitianD = HyperhermitianMatrix<double>;

/// Moore determinant of a hyperhermitian matrix (a real number).
template <class T>
T moore_det(const HyperhermitianMatrix<T>& h) {
    return moore_det_raw(h.matrix()).w;
}

/// Positive definiteness through the leading principal Moore minors.
template <class T>
bool is_positive(const HyperhermitianMatrix<T>& h) {
    for (std::size_t k = 1; k <= h.n(); ++k)
        if (!(moore_det_raw(h.matrix().leading_block(k)).w > T(0))) return false;
    return true;
}

/// 2n x 2 complex matrix of the embedding q -> z: block j is
/// [[x0 - i x1, -x2 + i x3], [x2 + i x3, x0 + i x1]] built from q_j.
std::vector<std::array<GaussRational, 2>> embed_tau(std::span<const QuatQ> q);

/// Standard complex representation of a quaternion matrix: q = z1 + z2 j maps
/// to [[z1, z2], [-conj(z2), conj(z1)]]. Its determinant equals the square of
/// the Moore determinant for hyperhermitian input.
std::vector<std::vector<GaussRational>> complex_representation(const QuatMatrix<Rational>& m);
Eigen::MatrixXcd complex_representation(const QuatMatrix<double>& m);

/// Exact determinant over Q(i) by Gaussian elimination.
GaussRational complex_det(std::vector<std::vector<GaussRational>> a);

HyperhermitianD to_double(const HyperhermitianQ& h);

}  // namespace qmap
