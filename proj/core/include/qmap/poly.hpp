#pragma once

#include "qmap/error.hpp"
#include "qmap/quaternion.hpp"
#include "qmap/rational.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace qmap {

using Monomial = std::vector<std::uint8_t>;

struct Interval {
    Rational lo;
    Rational hi;
};

/// Exact multivariate polynomial sum c_e x^e over nvars real variables.
/// Terms are kept in a sorted map and zero coefficients are never stored, so
/// structural equality is mathematical equality.
template <class Coef>
class MultiPoly {
public:
    using Terms = std::map<Monomial, Coef>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Coef& c) {
        MultiPoly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t var) {
        if (var >= nvars) throw PreconditionError("variable index out of range");
        Monomial m(nvars, 0);
        m[var] = 1;
        MultiPoly p(nvars);
        p.add_term(std::move(m), Coef(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (auto e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Monomial& m, const Coef& c) {
        if (m.size() != nvars_) throw PreconditionError("monomial has wrong variable count");
        if (qmap::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (qmap::is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly operator-() const {
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly out(a.nvars_);
        Monomial m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t v = 0; v < a.nvars_; ++v) m[v] = static_cast<std::uint8_t>(ma[v] + mb[v]);
                out.add_term(m, ca * cb);
            }
        return out;
    }

    MultiPoly scale(const Coef& s) const {
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        return out;
    }

    MultiPoly partial(std::size_t var) const {
        if (var >= nvars_) throw PreconditionError("partial: variable index out of range");
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            --d[var];
            out.add_term(d, c * Rational(m[var]));
        }
        return out;
    }

    /// Restriction to the hyperplane x_var = value (variable kept, exponent 0).
    MultiPoly substitute(std::size_t var, const Rational& value) const {
        if (var >= nvars_) throw PreconditionError("substitute: variable index out of range");
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial d = m;
            d[var] = 0;
            out.add_term(d, c * rational_pow(value, m[var]));
        }
        return out;
    }

    Coef evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars_) throw PreconditionError("evaluate: point has wrong dimension");
        Coef sum{};
        for (const auto& [m, c] : terms_) {
            Rational mono(1);
            for (std::size_t v = 0; v < nvars_; ++v) mono *= rational_pow(point[v], m[v]);
            sum += c * mono;
        }
        return sum;
    }

    /// Exact iterated integral over a product of intervals.
    Coef integrate_box(std::span<const Interval> box) const {
        if (box.size() != nvars_) throw PreconditionError("integrate_box: box dimension must equal nvars");
        Coef sum{};
        for (const auto& [m, c] : terms_) {
            Rational factor(1);
            for (std::size_t v = 0; v < nvars_; ++v) {
                const unsigned e = m[v] + 1u;
                factor *= (rational_pow(box[v].hi, e) - rational_pow(box[v].lo, e)) / Rational(e);
            }
            sum += c * factor;
        }
        return sum;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (const auto& [m, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << c;
            for (std::size_t v = 0; v < m.size(); ++v)
                if (m[v]) os << "*x" << v << (m[v] > 1 ? "^" + std::to_string(m[v]) : "");
        }
        return os;
    }

private:
    void check_compatible(const MultiPoly& o) const {
        if (o.nvars_ != nvars_) throw PreconditionError("polynomials have mismatched variable counts");
    }

    std::size_t nvars_ = 0;
    Terms terms_;
};

using RealPoly = MultiPoly<Rational>;
using ComplexPoly = MultiPoly<GaussRational>;
using QuatPoly = MultiPoly<QuatQ>;

template <class To, class From>
MultiPoly<To> lift(const MultiPoly<From>& p) {
    MultiPoly<To> out(p.nvars());
    for (const auto& [m, c] : p.terms()) out.add_term(m, To(c));
    return out;
}

/// Multiply every coefficient of a real polynomial by a quaternion on the left.
inline QuatPoly times_unit(const QuatQ& unit, const RealPoly& p) {
    QuatPoly out(p.nvars());
    for (const auto& [m, c] : p.terms()) out.add_term(m, unit * c);
    return out;
}

}  // namespace qmap
