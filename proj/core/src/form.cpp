#include "qmap/form.hpp"

#include "qmap/error.hpp"

namespace qmap {

int wedge_sign(FormIndex a, FormIndex b) {
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int inversions = 0;
    for (FormIndex rest = b; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const FormIndex above = a & ~((FormIndex{2} << j) - 1);
        inversions += std::popcount(above);
    }
    return (inversions % 2) ? -1 : 1;
}

Form Form::monomial(std::size_t n, const std::vector<int>& indices, const ComplexPoly& f) {
    Form out(n, static_cast<int>(indices.size()));
    FormIndex acc = 0;
    int sign = 1;
    for (int i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= 2 * n) throw PreconditionError("form index out of range");
        const FormIndex bit = FormIndex{1} << i;
        const int s = wedge_sign(acc, bit);
        if (s == 0) return out;
        sign *= s;
        acc |= bit;
    }
    out.add(acc, sign > 0 ? f : -f);
    return out;
}

ComplexPoly Form::coefficient(FormIndex index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? ComplexPoly(nvars()) : it->second;
}

void Form::add(FormIndex index, const ComplexPoly& f) {
    if (std::popcount(index) != degree_) throw PreconditionError("form slot has the wrong degree");
    if (f.nvars() != nvars()) throw PreconditionError("form coefficient has the wrong variable count");
    if (f.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(index, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Form& Form::operator+=(const Form& o) {
    if (o.n_ != n_ || o.degree_ != degree_) throw PreconditionError("adding forms of different shape");
    for (const auto& [i, f] : o.coeffs_) add(i, f);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (o.n_ != n_ || o.degree_ != degree_) throw PreconditionError("subtracting forms of different shape");
    for (const auto& [i, f] : o.coeffs_) add(i, -f);
    return *this;
}

Form Form::operator-() const {
    Form out(n_, degree_);
    for (const auto& [i, f] : coeffs_) out.add(i, -f);
    return out;
}

Form Form::scale(const GaussRational& s) const {
    Form out(n_, degree_);
    for (const auto& [i, f] : coeffs_) out.add(i, f.scale(s));
    return out;
}

Form wedge(const Form& f, const Form& g) {
    if (f.n() != g.n()) throw PreconditionError("wedge of forms over different dimensions");
    Form out(f.n(), f.degree() + g.degree());
    if (out.degree() > static_cast<int>(2 * f.n())) return out;
    for (const auto& [i, a] : f.coefficients())
        for (const auto& [j, b] : g.coefficients()) {
            const int s = wedge_sign(i, j);
            if (s == 0) continue;
            const ComplexPoly prod = a * b;
            out.add(i | j, s > 0 ? prod : -prod);
        }
    return out;
}

}  // namespace qmap
