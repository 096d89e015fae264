// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

#include "qmap/baston.hpp"
#include "qmap/capacity.hpp"
#include "qmap/exponents.hpp"
#include "qmap/regularity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

using namespace qmap;
using namespace qmap::testing;

namespace {

// Pinned tolerances and budgets.
constexpr int kCalculusInstances = 100;            // per quaternionic dimension
constexpr double kCalculusSeconds = 300.0;
constexpr int kMooreQuadratics = 50;
constexpr double kPoissonOracleTol = 1e-8;
constexpr double kPoissonOrder = 1.5;
constexpr double kPoissonSeconds = 600.0;
constexpr std::size_t kBellmanDirections = 4096;
constexpr int kBellmanQuadratics = 20;
constexpr double kBellmanRelGap = 0.02;
constexpr int kComparisonPairs = 20;
constexpr double kComparisonSlack = 1e-8;
constexpr double kSublevelTolerance = 0.05;
constexpr double kRadialStability = 0.10;
constexpr double kHolderFloor = 0.3;
constexpr double kExponentAgreement = 0.1;
constexpr double kStabilityFactor = 3.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SolverOptions solver_options(double omega = 1.8) {
    SolverOptions o;
    o.tol = 1e-13;
    o.omega = omega;
    return o;
}

// ---------------------------------------------------------------------------

Outcome exact_calculus() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::size_t checks = 0, failures = 0;
    auto expect = [&](bool ok) {
        ++checks;
        failures += !ok;
    };
    for (std::size_t n : {1u, 2u}) {
        const int top = static_cast<int>(2 * n);
        const std::vector<Interval> box(4 * n, {Rational(-1), Rational(1)});
        RealPoly bubble = RealPoly::constant(4 * n, Rational(1));
        for (std::size_t v = 0; v < 4 * n; ++v) {
            const RealPoly x = RealPoly::variable(4 * n, v);
            bubble = bubble * (RealPoly::constant(4 * n, Rational(1)) - x * x);
        }
        for (int i = 0; i < kCalculusInstances; ++i) {
            const Form f = random_form(n, i % (top + 1), rng);
            expect(d_alpha(d_alpha(f, 0), 0).is_zero());
            expect(d_alpha(d_alpha(f, 1), 1).is_zero());
            expect(d_alpha(d_alpha(f, 0), 1) == -d_alpha(d_alpha(f, 1), 0));

            const int p = i % 3;
            const Form a = random_form(n, p, rng), b = random_form(n, 1, rng);
            for (int alpha : {0, 1}) {
                const Form rhs_tail = wedge(a, d_alpha(b, alpha));
                expect(d_alpha(wedge(a, b), alpha) ==
                       wedge(d_alpha(a, alpha), b) + (p % 2 ? -rhs_tail : rhs_tail));
            }

            const std::size_t k = 1 + static_cast<std::size_t>(i) % n;
            Form w = delta_op(random_real_poly(4 * n, rng, 4, 3));
            for (std::size_t m = 1; m < k; ++m) w = wedge(w, delta_op(random_real_poly(4 * n, rng, 4, 3)));
            expect(d_alpha(w, 0).is_zero() && d_alpha(w, 1).is_zero());

            const RealPoly h = bubble * random_real_poly(4 * n, rng, 2, 1);
            const Form T = random_form(n, top - 1, rng, 2, 2, 2);
            expect(is_zero(stokes_check(T, h, box, i % 2)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {failures == 0 && secs < kCalculusSeconds,
            fmt("%zu exact identities on %d instances per n in {1,2}, %zu failures, %.1f s (limit %.0f s)", checks,
                kCalculusInstances, failures, secs, kCalculusSeconds)};
}

Outcome moore_consistency() {
    std::mt19937_64 rng(202);
    std::size_t failures = 0;
    std::string constants;
    for (std::size_t n : {1u, 2u}) {
        const MooreCalibration cal = calibrate_moore_constant(n);
        constants += fmt("c_%zu=%s ", n, to_string(cal.c_n).c_str());
        const std::vector<Rational> origin(4 * n, Rational(0));
        for (int i = 0; i < kMooreQuadratics; ++i) {
            const RealPoly u = random_quadratic(n, rng);
            const std::vector<RealPoly> us(n, u);
            const GaussRational lhs = mixed_ma(us).evaluate(origin);
            failures += !(lhs == GaussRational(cal.c_n * moore_det(quaternionic_hessian_at(u, origin))));
        }
    }
    return {failures == 0, fmt("%s; %d quadratics per n, %zu mismatches", constants.c_str(), kMooreQuadratics, failures)};
}

struct PoissonRun {
    double oracle_gap = 0.0;
    double continuum_error = 0.0;
};

PoissonRun poisson_run(double h, const std::string& psi, const PointFunction& exact) {
    const auto lat = make_lattice(make_ball(1, 1.0, h, psi, "1"));
    const auto u = bellman_solve_dirichlet(scheme_for(lat), solver_options()).u;
    const auto g = psi_of(lat);
    const auto sol = oracle::poisson_ball_4d(1.0, h, [](std::span<const double>) { return 1.0; }, g);
    PoissonRun r;
    std::map<std::array<int, 4>, std::size_t> index;
    std::vector<double> x(4);
    for (std::size_t k : lat->interior()) {
        lat->point(k, x);
        std::array<int, 4> c;
        for (std::size_t i = 0; i < 4; ++i) c[i] = static_cast<int>(std::lround(x[i] / h));
        index.emplace(c, k);
    }
    for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
        const auto it = index.find(sol.nodes[i]);
        if (it == index.end()) throw std::logic_error("oracle node is not an interior lattice node");
        const std::size_t k = it->second;
        lat->point(k, x);
        r.oracle_gap = std::max(r.oracle_gap, std::abs(u[k] - sol.values[i]));
        r.continuum_error = std::max(r.continuum_error, std::abs(u[k] - exact(x)));
    }
    if (sol.nodes.size() != lat->interior_count()) throw std::logic_error("oracle and solver node sets differ");
    return r;
}

Outcome poisson_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const double h1 = 1.0 / 6, h2 = 1.0 / 12;
    const auto radial = [](std::span<const double> x) { return (norm2(x) - 1.0) / 8.0; };
    const PoissonRun a = poisson_run(h1, "0", radial), b = poisson_run(h2, "0", radial);
    const char* psi = "norm2()^2 / 8 + 1 / ((x0 - 2)^2 + x1^2 + x2^2 + x3^2)";
    const auto smooth = [](std::span<const double> x) {
        return norm2(x) / 8.0 + 1.0 / ((x[0] - 2) * (x[0] - 2) + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    };
    const PoissonRun c = poisson_run(h1, psi, smooth), d = poisson_run(h2, psi, smooth);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double order_radial = std::log2(a.continuum_error / b.continuum_error);
    const double order_smooth = std::log2(c.continuum_error / d.continuum_error);
    const bool radial_ok = std::max(a.continuum_error, b.continuum_error) <= kPoissonOracleTol || order_radial >= kPoissonOrder;
    const bool pass = std::max({a.oracle_gap, b.oracle_gap, c.oracle_gap, d.oracle_gap}) <= kPoissonOracleTol &&
                      radial_ok && order_smooth >= kPoissonOrder && secs < kPoissonSeconds;
    return {pass, fmt("oracle gap %.1e/%.1e (radial) %.1e/%.1e (smooth); radial error %.1e/%.1e; smooth error "
                      "%.2e/%.2e order %.2f; %.0f s",
                      a.oracle_gap, b.oracle_gap, c.oracle_gap, d.oracle_gap, a.continuum_error, b.continuum_error,
                      c.continuum_error, d.continuum_error, order_smooth, secs)};
}

Outcome bellman_inf() {
    const auto dirs = sample_directions(2, {kBellmanDirections, 7, 0.5});
    std::vector<Eigen::MatrixXd> S;
    S.reserve(dirs.size());
    for (const auto& a : dirs) S.push_back(delta_a_real_matrix(a));
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N(0.0, 1.0);
    double worst = 0.0, lowest = std::numeric_limits<double>::infinity();
    for (int t = 0; t < kBellmanQuadratics; ++t) {
        Eigen::MatrixXd B(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) B(i, j) = 0.4 * N(rng);
        const Eigen::MatrixXd H = B.transpose() * B + Eigen::MatrixXd::Identity(8, 8);
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& s : S) inf = std::min(inf, (s * H).trace());
        const std::vector<double> Hv(H.data(), H.data() + 64);
        const double exact = oracle::bellman_inf_exact(oracle::quaternionic_hessian_of(Hv, 2));
        const double rel = (inf - exact) / exact;
        worst = std::max(worst, rel);
        lowest = std::min(lowest, rel);
    }
    return {lowest >= -1e-12 && worst <= kBellmanRelGap,
            fmt("%zu directions, %d quadratics: relative gap in [%.4f, %.4f] (limit %.2f)", dirs.size(),
                kBellmanQuadratics, lowest, worst, kBellmanRelGap)};
}

Outcome comparison_principle() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    double worst = -std::numeric_limits<double>::infinity();
    int pairs = 0;
    const auto run = [&](const LatticePtr& lat, const BellmanScheme& scheme) {
        GridFunction f2(lat, 0.0), f1(lat, 0.0);
        for (std::size_t k = 0; k < lat->size(); ++k)
            if (lat->is_closed(k)) {
                f2[k] = U(rng) * U(rng);
                f1[k] = f2[k] + (U(rng) < 1.0 ? 0.0 : U(rng));
            }
        const auto u1 = scheme.solve(f1, solver_options(1.5)).u;
        const auto u2 = scheme.solve(f2, solver_options(1.5)).u;
        for (std::size_t k : lat->interior()) worst = std::max(worst, u1[k] - u2[k]);
        ++pairs;
    };
    const auto lat1 = make_lattice(make_ball(1, 1.0, 1.0 / 6, "abs(x0) + x1 * x2", "0"));
    const BellmanScheme s1 = scheme_for(lat1);
    for (int i = 0; i < kComparisonPairs - 4; ++i) run(lat1, s1);
    const auto lat2 = make_lattice(make_ball(2, 1.0, 0.5, "abs(x0) + x5^2", "0"));
    const BellmanScheme s2 = scheme_for(lat2, 8, 3, 1);
    for (int i = 0; i < 4; ++i) run(lat2, s2);
    return {pairs == kComparisonPairs && worst <= kComparisonSlack,
            fmt("%d pairs (16 with n=1, 4 with n=2, %zu n=2 stencils): max(u1 - u2) = %.2e (limit %.0e)", pairs,
                s2.samples().size(), worst, kComparisonSlack)};
}

Outcome exponent_formulas() {
    const ExponentBudget b1 = exponent_budget(Rational(4), 1, Rational(2));
    const ExponentBudget b2 = exponent_budget(Rational(4), 2, Rational(2));
    bool ok = b1.alpha_max == Rational(2, 5) && b1.gamma_r == Rational(1, 3);
    ok = ok && b1.a_n_pow_n == Rational(1, 2) && b1.a_n == 0.5;
    // a_2 = 2^{-1/2} is irrational: exact through a_2^2 = 1/2, the float within two ulps
    ok = ok && b2.a_n_pow_n == Rational(1, 2) &&
         std::abs(b2.a_n - std::sqrt(0.5)) <= 2 * std::numeric_limits<double>::epsilon() * std::sqrt(0.5);
    std::string limits;
    for (std::size_t n : {1u, 2u, 3u}) {
        const Rational lim = exponent_budget_from_q(Rational(1), n, Rational(2)).alpha_max;
        ok = ok && lim == Rational(2, static_cast<long>(2 * n + 1));
        limits += to_string(lim) + " ";
    }
    return {ok, fmt("alpha_max(4,1)=%s gamma_2(4,1)=%s a_1=%g a_2=%.17g (a_2^2=%s) q->1 limits for n=1,2,3: %s",
                    to_string(b1.alpha_max).c_str(), to_string(b1.gamma_r).c_str(), b1.a_n, b2.a_n,
                    to_string(b2.a_n_pow_n).c_str(), limits.c_str())};
}

Outcome de_giorgi() {
    const double s4 = de_giorgi_sinfty(1.0, 2.0, 1.0);
    const auto f = [](double s) { return std::pow(std::max(0.0, 1.0 - s), 8); };
    const double tau = 9.0 / 8.0;
    const double B = de_giorgi_measure_B(f, tau, 2.0);
    const DeGiorgiRun run = de_giorgi_iterate(f, B, tau, 2.0);
    return {s4 == 4.0 && run.vanishes_beyond,
            fmt("S_inf(1,2,1)=%g; f=(1-s)_+^8, tau=9/8, measured B=%.6f: S_inf=%.4f, f vanishes from %.4f", s4, B,
                run.s_infinity, run.vanish_from)};
}

Outcome sublevel_capacity() {
    const double h = 1.0 / 12, c = 0.01;
    const auto lat = make_lattice(make_ball(1, 1.0, h, "0", "1"));
    const BellmanScheme scheme = scheme_for(lat);
    const SolverOptions o = solver_options(1.85);
    const GridFunction u = bellman_solve_dirichlet(scheme, o).u;
    const CapacityEngine engine{lat, scheme.samples(), solver_options(1.85)};
    const PointFunction psi_u = psi_of(lat);
    const PointFunction psi_v = [&](std::span<const double> x) { return psi_u(x) - c; };
    const std::vector<double> ts{0.01, 0.05}, ss{0.01, 0.05};

    std::size_t rows = 0, held = 0;
    double worst = 0.0;
    const auto check = [&](const GridFunction& density) {
        const GridFunction v = BellmanScheme(lat, scheme.samples(), psi_v).solve(density, o).u;
        const SublevelReport r = sublevel_capacity_check(u, v, scheme, psi_u, psi_v, ts, ss, engine, kSublevelTolerance);
        for (const auto& row : r.rows) {
            ++rows;
            held += row.holds;
            if (row.rhs > 0) worst = std::max(worst, row.lhs / row.rhs);
        }
    };
    check(GridFunction(lat, 0.0));   // v pluriharmonic
    check(GridFunction(lat, 0.25));  // v with a smaller density
    return {held == rows && rows == 8,
            fmt("%zu/%zu (t,s) rows hold over two v families; worst lhs/rhs = %.3f (tolerance %.0f%%)", held, rows,
                worst, 100 * kSublevelTolerance)};
}

Outcome radial_capacity() {
    const std::vector<double> radii{0.3, 0.4, 0.5, 0.6};
    std::vector<double> fitted;
    std::string detail;
    for (int m : {10, 20}) {
        const double h = 1.0 / m;
        const auto lat = make_lattice(make_ball(1, 1.0, h, "0", "0"));
        const CapacityEngine engine{lat, samples_for(lat), solver_options(1.85)};
        double sxy = 0.0, sxx = 0.0;
        for (double r : radii) {
            const double x = 1.0 / (1.0 / (r * r) - 1.0);
            const double cap = capacity_of_compact(compact_ball(*lat, {0, 0, 0, 0}, r, "K"), engine).over_omega;
            sxy += x * cap;
            sxx += x * x;
        }
        fitted.push_back(sxy / sxx);
        detail += fmt("h=1/%d C=%.3f ", m, fitted.back());
    }
    const double spread = std::abs(fitted[0] - fitted[1]) / std::max(fitted[0], fitted[1]);
    return {spread <= kRadialStability,
            detail + fmt("(continuum 4 pi^2 = %.3f); relative change %.3f (limit %.2f)",
                         4 * std::numbers::pi * std::numbers::pi, spread,
                         kRadialStability)};
}

Outcome regularity_measurement() {
    const double h = 1.0 / 12;
    const auto lat = make_lattice(make_ball(1, 1.0, h, "max(x0, 0) + x1 / 2", "1"));
    const BellmanScheme scheme = scheme_for(lat);
    const GridFunction u = scheme.with_boundary(bellman_solve_dirichlet(scheme, solver_options(1.85)).u);
    const double diam = lat->spec().diameter();
    std::vector<double> ts;
    for (int m = 1; std::sqrt(m) * h <= diam / 4 + 1e-12; ++m) ts.push_back(std::sqrt(m) * h);
    const ModulusCurve curve = modulus_of_continuity(u, ts, {std::size_t{1} << 40, 1});
    const HolderFit fit = holder_fit(curve, 4 * h, diam / 4);
    const GapReport gaps = convolution_gap_check(u, {2 * h, 4 * h, 8 * h}, fit.alpha);
    const double diff = std::abs(gaps.sup_exponent_capped - gaps.mean_exponent_capped);
    return {fit.alpha >= kHolderFloor && diff <= kExponentAgreement,
            fmt("Holder exponent %.3f over t in [4h, diam/4] (r2 %.3f, %zu pairs, exhaustive); capped gap exponents "
                "sup %.3f mean %.3f (raw %.3f / %.3f), difference %.3f (limit %.1f)",
                fit.alpha, fit.r2, curve.pairs_examined, gaps.sup_exponent_capped, gaps.mean_exponent_capped,
                gaps.sup_fit.alpha, gaps.mean_fit.alpha, diff, kExponentAgreement)};
}

Outcome stability() {
    const std::vector<double> kappas{1.1, 1.5};
    std::vector<std::vector<double>> C(kappas.size());
    for (int m : {6, 12}) {
        const double h = 1.0 / m;
        const auto lat = make_lattice(make_ball(1, 1.0, h, "abs(x0)", "1"));
        const BellmanScheme scheme = scheme_for(lat);
        const GridFunction f = density_field(lat);
        const GridFunction u = scheme.with_boundary(scheme.solve(f, solver_options()).u);
        for (std::size_t i = 0; i < kappas.size(); ++i) {
            GridFunction fk = f;
            for (auto& x : fk.values()) x *= kappas[i];
            const GridFunction uk = scheme.with_boundary(scheme.solve(fk, solver_options()).u);
            C[i].push_back(stability_check(uk, u, Rational(4), Rational(2), 0.9).C_fit);
        }
    }
    bool ok = true;
    std::string detail = "gamma = 0.9 gamma_2 = 0.3; C_fit at h=1/6, 1/12:";
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        const double ratio = std::max(C[i][0], C[i][1]) / std::min(C[i][0], C[i][1]);
        ok = ok && C[i][0] > 0 && C[i][1] > 0 && ratio <= kStabilityFactor;
        detail += fmt(" kappa=%.1f: %.4f, %.4f (ratio %.2f)", kappas[i], C[i][0], C[i][1], ratio);
    }
    return {ok, detail + fmt("; limit factor %.0f", kStabilityFactor)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"A1 exact calculus identities", exact_calculus},
        {"A2 Moore determinant consistency", moore_consistency},
        {"A3 Poisson oracle and convergence", poisson_oracle},
        {"A4 Bellman infimum identity", bellman_inf},
        {"A5 discrete comparison principle", comparison_principle},
        {"A6 exponent formulas", exponent_formulas},
        {"A7 De Giorgi iteration", de_giorgi},
        {"A8 sublevel capacity inequality", sublevel_capacity},
        {"A9 radial capacity law", radial_capacity},
        {"A10 regularity measurement", regularity_measurement},
        {"A11 stability estimate", stability},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
