#include "qmap/exponents.hpp"

#include "qmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmap {

ExponentBudget exponent_budget_from_q(const Rational& q, std::size_t n, const Rational& r) {
    if (q < 1 || q >= 2) throw PreconditionError("exponent budget: q must lie in [1, 2)");
    if (n < 1) throw PreconditionError("exponent budget: n must be at least 1");
    if (r < 1) throw PreconditionError("exponent budget: r must be at least 1");
    ExponentBudget b;
    b.q = q;
    b.p = q == 1 ? Rational(0) : Rational(q / (q - 1));
    b.n = n;
    b.r = r;
    const Rational nq = Rational(static_cast<long>(n)) * q;
    const Rational x = nq / (Rational(2) / q - 1);
    b.alpha_max = Rational(2) / (nq + 1 + x);
    b.alpha_max_r2 = Rational(2) / (nq + 2 + x);
    b.gamma_r = r / (nq + r + x);
    Rational fact(1), nn(1), two(1);
    for (std::size_t k = 1; k <= n; ++k) {
        fact *= static_cast<long>(k);
        nn *= static_cast<long>(n);
        two *= 2;
    }
    b.a_n_pow_n = nn / (two * fact);
    b.a_n = bellman_constant(n);
    return b;
}

ExponentBudget exponent_budget(const Rational& p, std::size_t n, const Rational& r) {
    if (p <= 2) throw PreconditionError("p must satisfy p > 2 (f in L^p with p > 2 is required)");
    ExponentBudget b = exponent_budget_from_q(Rational(p / (p - 1)), n, r);
    b.p = p;
    return b;
}

double bellman_constant(std::size_t n) {
    if (n == 0) throw PreconditionError("bellman_constant: n must be positive");
    double fact = 1.0;
    for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
    if (n == 1) return 0.5;
    if (n == 2) return 1.0 / std::sqrt(2.0);
    return static_cast<double>(n) / (2.0 * std::pow(fact, 1.0 / static_cast<double>(n)));
}

double de_giorgi_sinfty(double B, double tau, double f0) {
    if (!(tau > 1.0)) throw PreconditionError("de_giorgi: tau must exceed 1");
    if (!(B > 0.0)) throw PreconditionError("de_giorgi: B must be positive");
    if (f0 < 0.0) throw PreconditionError("de_giorgi: f(0) must be non-negative");
    return 2.0 * B * std::pow(f0, tau - 1.0) / (1.0 - std::pow(2.0, 1.0 - tau));
}

DeGiorgiRun de_giorgi_iterate(const std::function<double(double)>& f, double B, double tau, double s_max,
                              int max_steps, int samples) {
    DeGiorgiRun run;
    run.s_infinity = de_giorgi_sinfty(B, tau, f(0.0));
    double s = 0.0;
    run.iterates.push_back(s);
    for (int j = 0; j < max_steps; ++j) {
        const double fs = f(s);
        if (fs <= 0.0) break;
        s += 2.0 * B * std::pow(fs, tau - 1.0);
        run.iterates.push_back(s);
    }
    run.vanish_from = std::numeric_limits<double>::infinity();
    run.vanishes_beyond = true;
    for (int k = 0; k <= samples; ++k) {
        const double t = s_max * k / samples;
        const double v = f(t);
        if (v == 0.0) run.vanish_from = std::min(run.vanish_from, t);
        if (t >= run.s_infinity && v != 0.0) run.vanishes_beyond = false;
    }
    return run;
}

double de_giorgi_measure_B(const std::function<double(double)>& f, double tau, double s_max, int samples) {
    double B = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = s_max * i / samples;
        const double fs = f(s);
        if (fs <= 0.0) continue;
        const double denom = std::pow(fs, tau);
        for (int j = 1; i + j <= samples; ++j) {
            const double t = s_max * j / samples;
            B = std::max(B, t * f(s + t) / denom);
        }
    }
    return B;
}

}  // namespace qmap
