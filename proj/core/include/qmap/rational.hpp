#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace qmap {

using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
Rational rational_from_string(const std::string& text);
std::string to_string(const Rational& r);
Rational rational_pow(const Rational& base, unsigned exponent);

/// Element of Q(i). Coefficient ring of the Baston calculus.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit lift from Q
    GaussRational(long r) : re(r) {}                   // NOLINT
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRational i_unit() { return {Rational(0), Rational(1)}; }

    GaussRational conj() const { return {re, -im}; }

    GaussRational& operator+=(const GaussRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussRational operator-() const { return {-re, -im}; }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator*(const GaussRational& a, const Rational& s) { return {a.re * s, a.im * s}; }
    friend GaussRational operator*(const Rational& s, const GaussRational& a) { return {a.re * s, a.im * s}; }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b);
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend std::ostream& operator<<(std::ostream& os, const GaussRational& z);
};

inline bool is_zero(const GaussRational& z) { return is_zero(z.re) && is_zero(z.im); }

}  // namespace qmap
