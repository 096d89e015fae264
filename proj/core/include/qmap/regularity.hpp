#pragma once

#include "qmap/grid.hpp"
#include "qmap/rational.hpp"

#include <cstdint>
#include <vector>

namespace qmap {

/// Sampled modulus of continuity theta(t) = sup_{|x-y| <= t} |u(x) - u(y)|.
struct ModulusCurve {
    std::vector<double> t;      // ascending, positive
    std::vector<double> theta;  // nondecreasing
    double diameter = 0.0;
    std::size_t pairs_examined = 0;
    std::uint64_t seed = 0;
    bool exhaustive = true;

    /// Piecewise-linear interpolation through (0, 0) and the samples; clamps
    /// beyond the last sample.
    double at(double s) const;
};

struct ModulusOptions {
    std::size_t pair_budget = 1'000'000;
    std::uint64_t seed = 1;
};

/// Max of |u(x) - u(y)| over defined node pairs at distance <= t. When the
/// number of (offset, node) pairs exceeds the budget, every offset scans a
/// strided subset of nodes with a seeded start.
ModulusCurve modulus_of_continuity(const GridFunction& u, const std::vector<double>& ts,
                                   const ModulusOptions& options = {});

/// Least concave majorant of the polygon through (0, 0) and the samples,
/// evaluated at the sample abscissae.
ModulusCurve concave_majorant(const ModulusCurve& curve);

struct MajorantBoundCheck {
    std::size_t checked = 0;
    double worst_lower = 0.0;  // max of theta(lt) - bar(lt)
    double worst_upper = 0.0;  // max of bar(lt) - (1 + l) theta(t)
    bool holds = true;
};

/// theta(l t) <= bar(l t) <= (1 + l) theta(t) for every sample t and every
/// l with l t inside the sampled range.
MajorantBoundCheck check_majorant_bounds(const ModulusCurve& curve, const ModulusCurve& majorant,
                                         const std::vector<double>& lambdas, double tol = 1e-12);

/// Worst theta(t1 + t2) - theta(t1) - theta(t2) over sample pairs whose sum
/// stays in range.
double subadditivity_defect(const ModulusCurve& curve);

struct HolderFit {
    double alpha = 0.0;
    double C = 0.0;
    double r2 = 0.0;
    std::size_t samples = 0;
};

/// Least-squares fit of log theta = log C + alpha log t over samples with t in
/// [t_lo, t_hi]. Throws PreconditionError with fewer than 5 usable samples.
HolderFit holder_fit(const ModulusCurve& curve, double t_lo, double t_hi);
/// Same fit on raw (x, y) data.
HolderFit power_fit(const std::vector<double>& x, const std::vector<double>& y);

struct StabilityReport {
    double lhs = 0.0;       // max (u2 - u1)
    double l_r_norm = 0.0;  // lattice L^r norm of (u2 - u1)_+
    double gamma = 0.0;
    double C_fit = 0.0;     // lhs / l_r_norm^gamma, 0 when lhs <= 0
};

/// Compares sup(u2 - u1) with the L^r norm of (u2 - u1)_+ at gamma =
/// gamma_fraction * gamma_r(p, n, r). Requires u1 >= u2 on boundary nodes.
StabilityReport stability_check(const GridFunction& u1, const GridFunction& u2, const Rational& p,
                                const Rational& r, double gamma_fraction = 0.9);

struct GapRow {
    double delta = 0.0;
    double sup_gap = 0.0;       // max (u_delta - u) on Omega_delta
    double mean_gap = 0.0;      // max (mean_delta - u) on Omega_delta
    double sup_l2_sq = 0.0;     // ||u_delta - u||^2 in L2(Omega_delta)
    double mean_integral = 0.0; // integral of (mean_delta - u) over Omega_delta
    double l2_ratio = 0.0;      // sup_l2_sq / (||grad u||^2 delta^2)
    double mass_ratio = 0.0;    // mean_integral / (ma_mass delta^2)
};

struct GapReport {
    std::vector<GapRow> rows;
    double beta = 0.0;
    double A1 = 0.0;             // max sup_gap / delta^beta
    double A2 = 0.0;             // max mean_gap / delta^beta
    HolderFit sup_fit, mean_fit;
    double sup_exponent_capped = 0.0;   // min(fitted exponent, 1)
    double mean_exponent_capped = 0.0;
    bool exponents_agree = false;       // capped exponents within 0.1
    double l2_ratio_spread = 0.0;       // max / min across deltas
    double mass_ratio_spread = 0.0;
};

/// Sup- and mean-convolution gaps over a geometric delta sequence (at least
/// three values).
GapReport convolution_gap_check(const GridFunction& u, const std::vector<double>& deltas, double beta);

/// v + K1 |x - x0|^2 - K2 on the closed domain.
GridFunction barrier_shift(const GridFunction& v, const std::vector<double>& x0, double K1, double K2);

}  // namespace qmap
