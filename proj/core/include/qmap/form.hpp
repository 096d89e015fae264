#pragma once

#include "qmap/poly.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

namespace qmap {

/// Bit k set <=> omega^k present. Ascending bit order is the canonical
/// (strictly increasing) multi-index.
using FormIndex = std::uint32_t;

/// Graded element sum_I f_I omega^I of the exterior algebra over C^{2n} with
/// polynomial coefficients in the 4n real variables.
class Form {
public:
    Form() = default;
    Form(std::size_t n, int degree) : n_(n), degree_(degree) {}

    static Form scalar(std::size_t n, ComplexPoly f) {
        Form out(n, 0);
        out.add(0, f);
        return out;
    }

    /// f * omega^{i_1} ^ ... ^ omega^{i_p}; the indices may come in any order
    /// and the permutation sign is absorbed into the coefficient.
    static Form monomial(std::size_t n, const std::vector<int>& indices, const ComplexPoly& f);

    std::size_t n() const { return n_; }
    int degree() const { return degree_; }
    std::size_t nvars() const { return 4 * n_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<FormIndex, ComplexPoly>& coefficients() const { return coeffs_; }

    /// Coefficient of omega^I, zero polynomial when absent.
    ComplexPoly coefficient(FormIndex index) const;

    /// Accumulate f into the omega^I slot (no sign change).
    void add(FormIndex index, const ComplexPoly& f);

    static FormIndex top_index(std::size_t n) { return (FormIndex{1} << (2 * n)) - 1; }

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    Form operator-() const;
    Form scale(const GaussRational& s) const;

    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t n_ = 0;
    int degree_ = 0;
    std::map<FormIndex, ComplexPoly> coeffs_;
};

/// Sign of omega^I ^ omega^J relative to omega^{I u J}; 0 when I and J meet.
int wedge_sign(FormIndex a, FormIndex b);

/// Exterior product; zero once the degrees add past 2n.
Form wedge(const Form& f, const Form& g);

}  // namespace qmap
