#include "qmap/baston.hpp"

#include "qmap/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qmap {
namespace {

std::size_t dimension_of(const ComplexPoly& p) {
    if (p.nvars() == 0 || p.nvars() % 4 != 0) throw PreconditionError("polynomial variable count must be 4n");
    return p.nvars() / 4;
}

// derivative combination a*d_p + b*d_q with a, b in {+1,-1,+i,-i}
ComplexPoly combo(const ComplexPoly& p, std::size_t v0, const GaussRational& c0, std::size_t v1,
                  const GaussRational& c1) {
    return p.partial(v0).scale(c0) + p.partial(v1).scale(c1);
}

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    std::vector<int> p = perm;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

ComplexPoly nabla_apply(std::size_t j, int alpha, const ComplexPoly& p) {
    const std::size_t n = dimension_of(p);
    if (j >= 2 * n || (alpha != 0 && alpha != 1)) throw PreconditionError("nabla index out of range");
    const std::size_t l = j / 2;
    const GaussRational one(1), i = GaussRational::i_unit();
    if (j % 2 == 0) {
        return alpha == 0 ? combo(p, 4 * l, one, 4 * l + 1, i) : combo(p, 4 * l + 2, -one, 4 * l + 3, -i);
    }
    return alpha == 0 ? combo(p, 4 * l + 2, one, 4 * l + 3, -i) : combo(p, 4 * l, one, 4 * l + 1, -i);
}

Form d_alpha(const Form& f, int alpha) {
    const std::size_t n = f.n();
    Form out(n, f.degree() + 1);
    if (out.degree() > static_cast<int>(2 * n)) return out;
    for (const auto& [index, coeff] : f.coefficients())
        for (std::size_t k = 0; k < 2 * n; ++k) {
            const FormIndex bit = FormIndex{1} << k;
            const int s = wedge_sign(bit, index);
            if (s == 0) continue;
            const ComplexPoly d = nabla_apply(k, alpha, coeff);
            out.add(index | bit, s > 0 ? d : -d);
        }
    return out;
}

Form delta_op(const RealPoly& u) {
    const auto lifted = lift<GaussRational>(u);
    const std::size_t n = dimension_of(lifted);
    return d_alpha(d_alpha(Form::scalar(n, lifted), 1), 0);
}

ComplexPoly delta_ij(std::size_t i, std::size_t j, const RealPoly& u) {
    const auto p = lift<GaussRational>(u);
    const ComplexPoly a = nabla_apply(i, 0, nabla_apply(j, 1, p));
    const ComplexPoly b = nabla_apply(i, 1, nabla_apply(j, 0, p));
    return (a - b).scale(GaussRational(Rational(1, 2)));
}

ComplexPoly mixed_ma_wedge(std::span<const RealPoly> us) {
    if (us.empty()) throw PreconditionError("mixed_ma needs n functions");
    const std::size_t n = us.front().nvars() / 4;
    if (us.size() != n) throw PreconditionError("mixed_ma needs exactly n functions");
    Form acc = delta_op(us[0]);
    for (std::size_t k = 1; k < n; ++k) acc = wedge(acc, delta_op(us[k]));
    return acc.coefficient(Form::top_index(n));
}

ComplexPoly mixed_ma_permutation(std::span<const RealPoly> us) {
    if (us.empty()) throw PreconditionError("mixed_ma needs n functions");
    const std::size_t n = us.front().nvars() / 4;
    if (us.size() != n) throw PreconditionError("mixed_ma needs exactly n functions");

    // table[k][i][j] = Delta_ij u_k
    std::vector<std::vector<std::vector<ComplexPoly>>> table(n);
    for (std::size_t k = 0; k < n; ++k) {
        table[k].assign(2 * n, std::vector<ComplexPoly>(2 * n));
        for (std::size_t i = 0; i < 2 * n; ++i)
            for (std::size_t j = 0; j < 2 * n; ++j) table[k][i][j] = delta_ij(i, j, us[k]);
    }

    ComplexPoly total(4 * n);
    std::vector<int> perm(2 * n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        ComplexPoly term = ComplexPoly::constant(4 * n, GaussRational(permutation_sign(perm)));
        for (std::size_t k = 0; k < n && !term.is_zero(); ++k)
            term = term * table[k][static_cast<std::size_t>(perm[2 * k])][static_cast<std::size_t>(perm[2 * k + 1])];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

ComplexPoly mixed_ma(std::span<const RealPoly> us) {
    ComplexPoly w = mixed_ma_wedge(us);
    if (!(w == mixed_ma_permutation(us)))
        throw PreconditionError("mixed_ma: wedge and permutation routes disagree");
    return w;
}

std::vector<QuatPoly> quaternionic_hessian(const RealPoly& u) {
    if (u.nvars() == 0 || u.nvars() % 4 != 0) throw PreconditionError("polynomial variable count must be 4n");
    const std::size_t n = u.nvars() / 4;
    std::vector<QuatPoly> q(n * n, QuatPoly(u.nvars()));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (int a = 0; a < 4; ++a) {
                const RealPoly outer = u.partial(4 * j + static_cast<std::size_t>(a));
                for (int b = 0; b < 4; ++b) {
                    const QuatQ unit = QuatQ::unit(a) * QuatQ::unit(b).conj();
                    q[j * n + k] += times_unit(unit, outer.partial(4 * k + static_cast<std::size_t>(b)));
                }
            }
    return q;
}

HyperhermitianQ quaternionic_hessian_at(const RealPoly& u, std::span<const Rational> point) {
    const std::size_t n = u.nvars() / 4;
    const auto q = quaternionic_hessian(u);
    QuatMatrix<Rational> m(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = q[j * n + k].evaluate(point);
    return HyperhermitianQ::from(std::move(m));
}

RealPoly delta_a_apply(const HyperhermitianQ& a, const RealPoly& v) {
    const std::size_t n = v.nvars() / 4;
    if (a.n() != n) throw PreconditionError("delta_a: direction dimension does not match");
    const auto q = quaternionic_hessian(v);
    RealPoly out(v.nvars());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& [m, c] : q[j * n + k].terms()) {
                const QuatQ prod = a(k, j) * c;
                out.add_term(m, Rational(prod.w / 2));
            }
    return out;
}

RealPoly norm_squared(std::size_t n) {
    RealPoly u(4 * n);
    for (std::size_t v = 0; v < 4 * n; ++v) {
        Monomial m(4 * n, 0);
        m[v] = 2;
        u.add_term(m, Rational(1));
    }
    return u;
}

std::string operator_convention_note() {
    return "operator table uses the block pattern nabla_(2l+1)1 = d_x(4l) - i d_x(4l+1) in every block "
           "(an entry d_x0 - i d_x3 in block 0 would break the pattern and is not used)";
}

MooreCalibration calibrate_moore_constant(std::size_t n, std::size_t samples, std::uint64_t seed) {
    if (n != 1 && n != 2) throw PreconditionError("calibrate_moore_constant supports n in {1, 2}");
    const std::size_t nv = 4 * n;
    const std::vector<Rational> origin(nv, Rational(0));

    auto ratio = [&](const RealPoly& u) {
        const std::vector<RealPoly> us(n, u);
        const ComplexPoly top = mixed_ma(us);
        const GaussRational value = top.evaluate(origin);
        if (!is_zero(value.im)) throw PreconditionError("Delta_n of a real quadratic is not real");
        const Rational det = moore_det(quaternionic_hessian_at(u, origin));
        if (sgn(det) == 0) throw PreconditionError("degenerate Hessian in calibration");
        return Rational(value.re / det);
    };

    MooreCalibration cal;
    cal.n = n;
    cal.c_n = ratio(norm_squared(n));
    cal.convention_note = operator_convention_note();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (std::size_t s = 0; s < samples; ++s) {
        // x^T (B^T B + I) x with small integer B: strictly positive quadratic form
        std::vector<std::vector<long>> b(nv, std::vector<long>(nv));
        for (auto& row : b)
            for (auto& e : row) e = entry(rng);
        RealPoly u(nv);
        for (std::size_t p = 0; p < nv; ++p)
            for (std::size_t q = 0; q < nv; ++q) {
                long g = (p == q) ? 1 : 0;
                for (std::size_t r = 0; r < nv; ++r) g += b[r][p] * b[r][q];
                Monomial m(nv, 0);
                ++m[p];
                ++m[q];
                u.add_term(m, Rational(g));
            }
        if (ratio(u) != cal.c_n)
            throw PreconditionError("Moore calibration ratio is not constant; operator conventions disagree");
        ++cal.samples;
    }
    return cal;
}

GaussRational stokes_check(const Form& t, const RealPoly& h, std::span<const Interval> box, int alpha) {
    const std::size_t n = t.n();
    if (t.degree() != static_cast<int>(2 * n) - 1) throw PreconditionError("stokes_check: T must have degree 2n-1");
    if (h.nvars() != 4 * n || box.size() != 4 * n) throw PreconditionError("stokes_check: dimension mismatch");
    for (std::size_t v = 0; v < 4 * n; ++v)
        if (!h.substitute(v, box[v].lo).is_zero() || !h.substitute(v, box[v].hi).is_zero())
            throw PreconditionError("stokes_check: h does not vanish on face x" + std::to_string(v));

    const Form hf = Form::scalar(n, lift<GaussRational>(h));
    const Form lhs = wedge(hf, d_alpha(t, alpha));
    const Form rhs = wedge(d_alpha(hf, alpha), t);
    const FormIndex top = Form::top_index(n);
    return lhs.coefficient(top).integrate_box(box) + rhs.coefficient(top).integrate_box(box);
}

}  // namespace qmap
