#pragma once

#include "qmap/rational.hpp"

#include <functional>
#include <vector>

namespace qmap {

/// Exponents of the Holder and stability estimates for f in L^p, p > 2.
/// X = nq/(2/q - 1) below.
struct ExponentBudget {
    Rational p;   // 0 encodes p = infinity (q = 1)
    Rational q;
    std::size_t n = 1;
    Rational r;
    Rational alpha_max;     // 2/(qn + 1 + X)
    Rational alpha_max_r2;  // 2/(qn + 2 + X), the stability exponent at r = 2
    Rational gamma_r;       // r/(nq + r + X)
    Rational a_n_pow_n;     // a_n^n = n^n / (2^n n!)
    double a_n = 0.0;       // n / (2 (n!)^{1/n})
};

/// Throws PreconditionError unless p > 2, n >= 1, r >= 1.
ExponentBudget exponent_budget(const Rational& p, std::size_t n, const Rational& r);
/// Same budget parametrised by the conjugate exponent, 1 <= q < 2 (q = 1 is
/// the p = infinity limit).
ExponentBudget exponent_budget_from_q(const Rational& q, std::size_t n, const Rational& r);

/// a_n = n / (2 (n!)^{1/n}).
double bellman_constant(std::size_t n);

/// S_inf = 2 B f0^{tau-1} / (1 - 2^{1-tau}). Throws unless tau > 1, B > 0, f0 >= 0.
double de_giorgi_sinfty(double B, double tau, double f0);

struct DeGiorgiRun {
    double s_infinity = 0.0;
    std::vector<double> iterates;  // s_0 = 0, s_{j+1} = s_j + 2 B f(s_j)^{tau-1}
    double vanish_from = 0.0;      // smallest sampled s with f(s) = 0 (inf if none)
    bool vanishes_beyond = false;  // f(s) = 0 for every sampled s >= S_inf
};

/// Runs the dyadic iteration on a decreasing f and checks that f vanishes on
/// sampled points of [S_inf, s_max].
DeGiorgiRun de_giorgi_iterate(const std::function<double(double)>& f, double B, double tau, double s_max,
                              int max_steps = 200, int samples = 2000);

/// Smallest B with t f(s + t) <= B f(s)^tau on a sampled (s, t) grid over
/// [0, s_max].
double de_giorgi_measure_B(const std::function<double(double)>& f, double tau, double s_max, int samples = 400);

}  // namespace qmap
