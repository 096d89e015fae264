#pragma once

#include "qmap/grid.hpp"
#include "qmap/rational.hpp"
#include "qmap/stencil.hpp"

#include <functional>
#include <span>
#include <vector>

namespace qmap {

using PointFunction = std::function<double(std::span<const double>)>;

struct SolverOptions {
    double tol = 1e-10;       // stop when the largest update of a full sweep is below tol
    int max_iter = 200000;    // sweeps
    double omega = 1.0;       // over-relaxation of the Gauss-Seidel update
    int policy_sweeps = 1;    // sweeps with a frozen argmin between re-minimisations
};

struct SolveReport {
    int iterations = 0;
    double last_update = 0.0;
    double residual = 0.0;               // max |min_a candidate - u| at exit
    std::vector<double> update_history;  // largest update of every full sweep
};

struct SolveResult {
    GridFunction u;
    SolveReport report;
};

/// Monotone discretisation of the Bellman operator u -> min_a Delta_a u on one
/// lattice. Arms leaving the domain are shortened to the exact boundary
/// crossing, where the boundary function is evaluated (Shortley-Weller
/// second differences).
class BellmanScheme {
public:
    BellmanScheme(LatticePtr lattice, std::vector<OperatorSample> samples, PointFunction boundary);

    const Lattice& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    const std::vector<OperatorSample>& samples() const { return samples_; }

    /// Maximal discrete subsolution of Delta_a u >= a_n f^{1/n} for every
    /// sampled a, optionally capped by an obstacle (u <= obstacle[k]; NaN or
    /// +inf means no cap). `density` holds f on lattice nodes. Throws
    /// PreconditionError for negative f and ConvergenceError after max_iter.
    SolveResult solve(const GridFunction& density, const SolverOptions& options,
                      const std::vector<double>* obstacle = nullptr) const;

    /// Delta_a u at interior node k for sample s, boundary arms closed by the
    /// boundary function.
    double apply(const GridFunction& u, std::size_t k, std::size_t sample) const;

    /// Density of (Delta u)^n against dV in Bellman form,
    /// (max(0, min_a Delta_a u) / a_n)^n, at interior nodes.
    GridFunction density(const GridFunction& u) const;

    /// u on interior nodes, the boundary function on boundary nodes.
    GridFunction with_boundary(const GridFunction& u) const;

private:
    struct ArmRef {
        std::int32_t ref;  // >= 0: compact interior index; < 0: -(slot + 1)
    };
    double candidate(const std::vector<double>& u, std::size_t i, std::size_t sample, double g) const;
    double arm_value(const std::vector<double>& u, std::int32_t ref, double& theta) const;

    LatticePtr lattice_;
    std::vector<OperatorSample> samples_;
    PointFunction boundary_;
    std::vector<std::vector<int>> dirs_;                     // distinct lattice directions
    std::vector<double> dir_length_;                         // |v| h
    std::vector<std::vector<std::pair<std::size_t, double>>> sample_arms_;  // (dir, lambda)
    std::vector<std::int32_t> refs_;                         // [compact][dir][sign]
    std::vector<double> slot_theta_, slot_value_;
    std::vector<std::int64_t> compact_of_;                   // lattice node -> compact index or -1
};

/// Dirichlet problem of the lattice's own spec: psi on the boundary, f as the
/// density.
SolveResult bellman_solve_dirichlet(const BellmanScheme& scheme, const SolverOptions& options);

/// f sampled from the spec on closed-domain nodes.
GridFunction density_field(LatticePtr lattice);

/// Pointwise discrete Delta_n(u, ..., u) from central differences fed into
/// the Delta_ij coefficient tables, divided by the dV normalisation
/// c_n / n!. Nodes without a full closed neighbourhood are NaN.
GridFunction ma_density(const GridFunction& u, const Rational& c_n);

}  // namespace qmap
