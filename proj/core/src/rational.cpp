#include "qmap/rational.hpp"

#include "qmap/error.hpp"

namespace qmap {

Rational rational_from_string(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) {
        throw PreconditionError("not a rational literal: '" + text + "'");
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_pow(const Rational& base, unsigned exponent) {
    Rational out(1);
    for (unsigned k = 0; k < exponent; ++k) out *= base;
    return out;
}

GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    const Rational den = b.re * b.re + b.im * b.im;
    if (sgn(den) == 0) throw PreconditionError("division by zero in Q(i)");
    const GaussRational num = a * b.conj();
    return {num.re / den, num.im / den};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    return os << '(' << z.re.get_str() << (sgn(z.im) < 0 ? "" : "+") << z.im.get_str() << "i)";
}

}  // namespace qmap
