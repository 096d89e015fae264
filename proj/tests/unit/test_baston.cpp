#include "random_instances.hpp"

#include "qmap/baston.hpp"

#include <gtest/gtest.h>

using namespace qmap;
using namespace qmap::testing;

namespace {

ComplexPoly cx(std::size_t nvars, std::size_t v) { return lift<GaussRational>(RealPoly::variable(nvars, v)); }
ComplexPoly cconst(std::size_t nvars, GaussRational c) { return ComplexPoly::constant(nvars, c); }
const GaussRational I = GaussRational::i_unit();

GaussRational constant_term(const ComplexPoly& p) {
    const std::vector<Rational> origin(p.nvars(), Rational(0));
    EXPECT_LE(p.degree(), 0);
    return p.evaluate(origin);
}

Form sign_scaled(const Form& f, int p) { return p % 2 ? -f : f; }

}  // namespace

TEST(Nabla, OperatorTableEntries) {
    EXPECT_EQ(nabla_apply(0, 0, cx(4, 0)), cconst(4, 1));
    EXPECT_EQ(nabla_apply(0, 0, cx(4, 1)), cconst(4, I));
    EXPECT_EQ(nabla_apply(1, 0, cx(4, 2)), cconst(4, 1));
    EXPECT_EQ(nabla_apply(1, 0, cx(4, 3)), cconst(4, -I));
    EXPECT_EQ(nabla_apply(0, 1, cx(4, 2)), cconst(4, -1));
    EXPECT_EQ(nabla_apply(0, 1, cx(4, 3)), cconst(4, -I));
    EXPECT_EQ(nabla_apply(1, 1, cx(4, 0)), cconst(4, 1));
    EXPECT_EQ(nabla_apply(1, 1, cx(4, 1)), cconst(4, -I));
    EXPECT_TRUE(nabla_apply(1, 1, cx(4, 3)).is_zero());
    // second block uses variables 4..7 in the same pattern
    EXPECT_EQ(nabla_apply(2, 0, cx(8, 5)), cconst(8, I));
    EXPECT_EQ(nabla_apply(3, 1, cx(8, 4)), cconst(8, 1));
    EXPECT_THROW(nabla_apply(2, 0, cx(4, 0)), PreconditionError);
}

TEST(DAlpha, DegreeZeroExample) {
    const Form du = d_alpha(Form::scalar(1, cx(4, 0)), 0);
    EXPECT_EQ(du, Form::monomial(1, {0}, cconst(4, 1)));
}

TEST(DAlpha, NilpotentAndAnticommuting) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1u, 2u})
        for (int deg = 0; deg <= static_cast<int>(2 * n); ++deg)
            for (int t = 0; t < 5; ++t) {
                const Form f = random_form(n, deg, rng);
                EXPECT_TRUE(d_alpha(d_alpha(f, 0), 0).is_zero());
                EXPECT_TRUE(d_alpha(d_alpha(f, 1), 1).is_zero());
                EXPECT_EQ(d_alpha(d_alpha(f, 0), 1), -d_alpha(d_alpha(f, 1), 0));
            }
    const RealPoly u = RealPoly::variable(4, 0) * RealPoly::variable(4, 2);
    const Form fu = Form::scalar(1, lift<GaussRational>(u));
    const Form sq = Form::scalar(1, cx(4, 0) * cx(4, 0));
    EXPECT_FALSE(d_alpha(d_alpha(sq, 1), 0).is_zero());
    EXPECT_EQ(d_alpha(d_alpha(fu, 1), 0), -d_alpha(d_alpha(fu, 0), 1));
}

TEST(Wedge, SignsAndOddSquares) {
    const ComplexPoly one = cconst(4, 1);
    const Form w0 = Form::monomial(1, {0}, one), w1 = Form::monomial(1, {1}, one);
    EXPECT_EQ(wedge(w0, w1), -wedge(w1, w0));
    EXPECT_EQ(Form::monomial(1, {1, 0}, one), -Form::monomial(1, {0, 1}, one));
    std::mt19937_64 rng(12);
    for (std::size_t n : {1u, 2u})
        for (int t = 0; t < 5; ++t) {
            const Form f = random_form(n, 1, rng, 3);
            EXPECT_TRUE(wedge(f, f).is_zero());
        }
    EXPECT_TRUE(wedge(Form::monomial(1, {0, 1}, one), w0).is_zero());
}

TEST(Wedge, LeibnizRule) {
    std::mt19937_64 rng(13);
    for (std::size_t n : {1u, 2u})
        for (int p = 0; p <= 2; ++p)
            for (int t = 0; t < 4; ++t) {
                const Form f = random_form(n, p, rng), g = random_form(n, 1, rng);
                for (int alpha : {0, 1}) {
                    const Form lhs = d_alpha(wedge(f, g), alpha);
                    const Form rhs = wedge(d_alpha(f, alpha), g) + sign_scaled(wedge(f, d_alpha(g, alpha)), p);
                    EXPECT_EQ(lhs, rhs) << "n=" << n << " p=" << p;
                }
            }
}

TEST(DeltaOp, MatchesDeltaIjTable) {
    std::mt19937_64 rng(14);
    for (std::size_t n : {1u, 2u})
        for (int t = 0; t < 4; ++t) {
            const RealPoly u = random_real_poly(4 * n, rng, 5, 3);
            const Form du = delta_op(u);
            for (std::size_t i = 0; i < 2 * n; ++i)
                for (std::size_t j = i + 1; j < 2 * n; ++j) {
                    const FormIndex idx = (FormIndex{1} << i) | (FormIndex{1} << j);
                    // omega^i ^ omega^j with i < j collects Delta_ij - Delta_ji = 2 Delta_ij
                    EXPECT_EQ(du.coefficient(idx), delta_ij(i, j, u).scale(GaussRational(2)));
                    EXPECT_EQ(delta_ij(i, j, u), -delta_ij(j, i, u));
                }
        }
    EXPECT_TRUE(delta_op(RealPoly::constant(4, Rational(3))).is_zero());
}

TEST(DeltaOp, NormSquaredCoefficient) {
    const RealPoly q2 = norm_squared(1);
    EXPECT_EQ(delta_ij(0, 1, q2), cconst(4, 4));
    EXPECT_EQ(delta_ij(1, 0, q2), cconst(4, -4));
    EXPECT_TRUE(delta_ij(0, 0, q2).is_zero());
}

TEST(DeltaOp, WedgePowersAreClosed) {
    std::mt19937_64 rng(15);
    for (std::size_t n : {1u, 2u})
        for (std::size_t k = 1; k <= n; ++k)
            for (int t = 0; t < 3; ++t) {
                Form w = delta_op(random_real_poly(4 * n, rng, 4, 3));
                for (std::size_t m = 1; m < k; ++m) w = wedge(w, delta_op(random_real_poly(4 * n, rng, 4, 3)));
                EXPECT_TRUE(d_alpha(w, 0).is_zero());
                EXPECT_TRUE(d_alpha(w, 1).is_zero());
            }
}

TEST(MixedMA, NormSquaredValue) {
    const std::vector<RealPoly> us{norm_squared(1)};
    EXPECT_EQ(constant_term(mixed_ma(us)), GaussRational(8));
}

TEST(MixedMA, RoutesAgreeAndAreSymmetric) {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 10; ++t) {
        const RealPoly a = random_quadratic(2, rng), b = random_quadratic(2, rng);
        const std::vector<RealPoly> ab{a, b}, ba{b, a};
        EXPECT_EQ(mixed_ma_wedge(ab), mixed_ma_permutation(ab));
        EXPECT_EQ(mixed_ma(ab), mixed_ma(ba));
    }
    std::vector<RealPoly> wrong{norm_squared(2)};
    EXPECT_THROW(mixed_ma(wrong), PreconditionError);
}

TEST(Calibration, FactorialConstants) {
    // n = 1: Delta_1 |q|^2 = 8 and the Hessian of |q|^2 is [8].
    // n = 2: the permutation sum gives 8 * 4 * 4 = 128 against diag(8, 8).
    const auto c1 = calibrate_moore_constant(1);
    const auto c2 = calibrate_moore_constant(2);
    EXPECT_EQ(c1.c_n, Rational(1));
    EXPECT_EQ(c2.c_n, Rational(2));
    EXPECT_EQ(c1.samples, 20u);
    EXPECT_EQ(calibrate_moore_constant(2, 20, 99).c_n, c2.c_n);
    EXPECT_FALSE(c2.convention_note.empty());
    EXPECT_THROW(calibrate_moore_constant(3), PreconditionError);
}

TEST(Calibration, ScaledNormRatioIsConstant) {
    const auto c1 = calibrate_moore_constant(1).c_n;
    const std::vector<Rational> origin(4, Rational(0));
    for (const Rational a : {Rational(1, 3), Rational(2), Rational(7, 5)}) {
        const RealPoly u = norm_squared(1).scale(a);
        const std::vector<RealPoly> us{u};
        const GaussRational lhs = constant_term(mixed_ma(us));
        EXPECT_EQ(lhs, GaussRational(c1 * moore_det(quaternionic_hessian_at(u, origin))));
    }
}

TEST(QuaternionicHessian, HyperhermitianAndConsistent) {
    std::mt19937_64 rng(17);
    for (std::size_t n : {1u, 2u}) {
        const Rational c_n = calibrate_moore_constant(n).c_n;
        const std::vector<Rational> origin(4 * n, Rational(0));
        for (int t = 0; t < 10; ++t) {
            const RealPoly u = random_quadratic(n, rng);
            const HyperhermitianQ q = quaternionic_hessian_at(u, origin);
            std::vector<RealPoly> us(n, u);
            EXPECT_EQ(constant_term(mixed_ma(us)), GaussRational(c_n * moore_det(q)));
        }
    }
}

TEST(DeltaA, ConvexQuadraticsArePositive) {
    std::mt19937_64 rng(18);
    for (std::size_t n : {1u, 2u}) {
        const std::vector<Rational> origin(4 * n, Rational(0));
        for (int t = 0; t < 8; ++t) {
            const RealPoly u = random_convex_quadratic(n, rng);
            const HyperhermitianQ a = random_positive_hyperhermitian(n, rng);
            EXPECT_GT(delta_a_apply(a, u).evaluate(origin), 0);
        }
    }
}

TEST(Stokes, BubbleExample) {
    RealPoly h = RealPoly::constant(4, Rational(1));
    for (std::size_t v = 0; v < 4; ++v) {
        const RealPoly x = RealPoly::variable(4, v);
        h = h * x * (RealPoly::constant(4, Rational(1)) - x);
    }
    const std::vector<Interval> box(4, {Rational(0), Rational(1)});
    const Form t = Form::monomial(1, {1}, cx(4, 0));
    for (int alpha : {0, 1}) EXPECT_EQ(stokes_check(t, h, box, alpha), GaussRational(0));
    EXPECT_EQ(stokes_check(t, RealPoly(4), box, 0), GaussRational(0));
    EXPECT_THROW(stokes_check(t, RealPoly::variable(4, 0), box, 0), PreconditionError);
    EXPECT_THROW(stokes_check(Form::monomial(1, {0, 1}, cx(4, 0)), h, box, 0), PreconditionError);
}

TEST(Stokes, RandomInstances) {
    std::mt19937_64 rng(19);
    for (std::size_t n : {1u, 2u}) {
        const std::vector<Interval> box(4 * n, {Rational(-1), Rational(1)});
        RealPoly bubble = RealPoly::constant(4 * n, Rational(1));
        for (std::size_t v = 0; v < 4 * n; ++v) {
            const RealPoly x = RealPoly::variable(4 * n, v);
            bubble = bubble * (RealPoly::constant(4 * n, Rational(1)) - x * x);
        }
        for (int t = 0; t < 3; ++t) {
            const RealPoly h = bubble * random_real_poly(4 * n, rng, 2, 1);
            const Form T = random_form(n, static_cast<int>(2 * n) - 1, rng, 2, 2, 2);
            for (int alpha : {0, 1}) EXPECT_EQ(stokes_check(T, h, box, alpha), GaussRational(0));
        }
    }
}
