#include "qmap_cli/identities.hpp"

#include "qmap/baston.hpp"

#include <bit>
#include <random>

namespace qmap::cli {
namespace {

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    Rational coefficient() {
        std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
        return Rational(num(rng_)) / Rational(den(rng_));
    }

    RealPoly real(std::size_t nvars, int terms, int max_degree) {
        std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
        std::uniform_int_distribution<int> deg(0, max_degree);
        RealPoly p(nvars);
        for (int t = 0; t < terms; ++t) {
            Monomial m(nvars, 0);
            for (int d = deg(rng_); d > 0; --d) ++m[var(rng_)];
            p.add_term(m, coefficient());
        }
        return p;
    }

    ComplexPoly complex(std::size_t nvars, int terms, int max_degree) {
        ComplexPoly p = lift<GaussRational>(real(nvars, terms, max_degree));
        return p + lift<GaussRational>(real(nvars, terms, max_degree)).scale(GaussRational::i_unit());
    }

    Form form(std::size_t n, int degree, int terms = 3, int max_degree = 3) {
        Form f(n, degree);
        std::vector<FormIndex> slots;
        for (FormIndex i = 0; i < (FormIndex{1} << (2 * n)); ++i)
            if (std::popcount(i) == degree) slots.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
        for (int s = 0; s < 2; ++s) f.add(slots[pick(rng_)], complex(4 * n, terms, max_degree));
        return f;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

std::vector<IdentityResult> run_identity_suite(std::size_t n, std::size_t count, std::uint64_t seed) {
    Generator gen(seed);
    std::vector<IdentityResult> out{{"d0_squared"}, {"d1_squared"},     {"anticommutation"}, {"leibniz"},
                                    {"closedness"}, {"integration_by_parts"}, {"delta_n_routes"}};
    auto record = [&](std::size_t i, bool ok) {
        ++out[i].checked;
        out[i].failed += !ok;
    };
    const std::size_t nv = 4 * n;
    const int top = static_cast<int>(2 * n);
    const std::vector<Interval> box(nv, {Rational(-1), Rational(1)});
    RealPoly bubble = RealPoly::constant(nv, Rational(1));
    for (std::size_t v = 0; v < nv; ++v) {
        const RealPoly x = RealPoly::variable(nv, v);
        bubble = bubble * (RealPoly::constant(nv, Rational(1)) - x * x);
    }
    for (std::size_t i = 0; i < count; ++i) {
        const int degree = static_cast<int>(i % static_cast<std::size_t>(top + 1));
        const Form f = gen.form(n, degree);
        record(0, d_alpha(d_alpha(f, 0), 0).is_zero());
        record(1, d_alpha(d_alpha(f, 1), 1).is_zero());
        record(2, d_alpha(d_alpha(f, 0), 1) == -d_alpha(d_alpha(f, 1), 0));

        const int p = static_cast<int>(i % 3);
        const Form a = gen.form(n, p), b = gen.form(n, 1);
        for (int alpha : {0, 1}) {
            const Form tail = wedge(a, d_alpha(b, alpha));
            record(3, d_alpha(wedge(a, b), alpha) == wedge(d_alpha(a, alpha), b) + (p % 2 ? -tail : tail));
        }

        const std::size_t k = 1 + i % n;
        Form w = delta_op(gen.real(nv, 4, 3));
        for (std::size_t m = 1; m < k; ++m) w = wedge(w, delta_op(gen.real(nv, 4, 3)));
        record(4, d_alpha(w, 0).is_zero() && d_alpha(w, 1).is_zero());

        const RealPoly h = bubble * gen.real(nv, 2, 1);
        record(5, is_zero(stokes_check(gen.form(n, top - 1, 2, 2), h, box, static_cast<int>(i % 2))));

        std::vector<RealPoly> us;
        for (std::size_t m = 0; m < n; ++m) us.push_back(gen.real(nv, 3, 2));
        record(6, mixed_ma_wedge(us) == mixed_ma_permutation(us));
    }
    return out;
}

}  // namespace qmap::cli
