#include "qmap/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qmap;

namespace {

RealPoly x(std::size_t nvars, std::size_t v) { return RealPoly::variable(nvars, v); }

RealPoly random_poly(std::size_t nvars, std::mt19937_64& rng, int terms = 6, int max_exp = 3) {
    std::uniform_int_distribution<int> coef(-7, 7), e(0, max_exp);
    RealPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars);
        for (auto& k : m) k = static_cast<std::uint8_t>(e(rng));
        p.add_term(m, Rational(coef(rng)) / Rational(1 + std::abs(coef(rng))));
    }
    return p;
}

std::vector<Interval> unit_box(std::size_t nvars) { return std::vector<Interval>(nvars, {Rational(0), Rational(1)}); }

}  // namespace

TEST(PolyArith, DifferenceOfSquares) {
    const RealPoly a = x(4, 0), b = x(4, 1);
    EXPECT_EQ((a + b) * (a - b), a * a - b * b);
}

TEST(PolyArith, ZeroIdentities) {
    std::mt19937_64 rng(1);
    const RealPoly p = random_poly(4, rng);
    EXPECT_EQ(p + RealPoly(4), p);
    EXPECT_TRUE(p.scale(Rational(0)).is_zero());
    EXPECT_TRUE((p - p).is_zero());
}

TEST(PolyArith, MismatchedVariableCountsThrow) {
    EXPECT_THROW(x(4, 0) + x(8, 0), PreconditionError);
    EXPECT_THROW(x(4, 0) * x(8, 0), PreconditionError);
    EXPECT_THROW(RealPoly::variable(4, 4), PreconditionError);
}

TEST(PolyArith, RingAxiomsOnRandomTriples) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        const RealPoly a = random_poly(4, rng), b = random_poly(4, rng), c = random_poly(4, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
    }
}

TEST(PolyArith, NoStoredZeros) {
    RealPoly p = x(4, 0);
    p.add_term(Monomial{1, 0, 0, 0}, Rational(-1));
    EXPECT_TRUE(p.is_zero());
    EXPECT_TRUE(p.terms().empty());
}

TEST(PolyPartial, Examples) {
    const RealPoly p = x(4, 0) * x(4, 1) * x(4, 1);
    EXPECT_EQ(p.partial(1), (x(4, 0) * x(4, 1)).scale(Rational(2)));
    EXPECT_TRUE(RealPoly::constant(4, Rational(5)).partial(0).is_zero());
    EXPECT_THROW(p.partial(4), PreconditionError);
}

TEST(PolyPartial, MixedPartialsCommute) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const RealPoly p = random_poly(8, rng, 10, 4);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j) EXPECT_EQ(p.partial(i).partial(j), p.partial(j).partial(i));
    }
}

TEST(PolyIntegrate, Examples) {
    const auto box = unit_box(4);
    EXPECT_EQ((x(4, 0) * x(4, 0)).integrate_box(box), Rational(1, 3));
    const std::vector<Interval> b2{{Rational(0), Rational(2)}, {Rational(-1), Rational(1)},
                                   {Rational(1), Rational(4)}, {Rational(0), Rational(1, 2)}};
    EXPECT_EQ(RealPoly::constant(4, Rational(1)).integrate_box(b2), Rational(6));
    const std::vector<Interval> sym(4, {Rational(-1), Rational(1)});
    EXPECT_EQ((x(4, 0) * x(4, 1) * x(4, 1)).integrate_box(sym), Rational(0));
    EXPECT_THROW(x(4, 0).integrate_box(unit_box(3)), PreconditionError);
}

TEST(PolyIntegrate, LinearAndAdditiveOverSplits) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const RealPoly a = random_poly(4, rng), b = random_poly(4, rng);
        const auto box = unit_box(4);
        const Rational s(-3, 5);
        EXPECT_EQ((a.scale(s) + b).integrate_box(box), s * a.integrate_box(box) + b.integrate_box(box));
        for (std::size_t v = 0; v < 4; ++v) {
            auto left = box, right = box;
            left[v].hi = Rational(1, 3);
            right[v].lo = Rational(1, 3);
            EXPECT_EQ(a.integrate_box(box), a.integrate_box(left) + a.integrate_box(right));
        }
    }
}

TEST(PolyEvaluate, MatchesSubstitution) {
    std::mt19937_64 rng(5);
    const RealPoly p = random_poly(4, rng);
    const std::vector<Rational> pt{Rational(1, 2), Rational(-2), Rational(3), Rational(1, 7)};
    RealPoly q = p;
    for (std::size_t v = 0; v < 4; ++v) q = q.substitute(v, pt[v]);
    EXPECT_LE(q.degree(), 0);
    EXPECT_EQ(q.evaluate(pt), p.evaluate(pt));
}
