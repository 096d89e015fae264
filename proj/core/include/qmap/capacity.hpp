#pragma once

#include "qmap/solver.hpp"

#include <string>
#include <vector>

namespace qmap {

/// Compact set K given as an indicator over lattice nodes.
struct CompactSpec {
    std::string name;
    std::vector<char> nodes;

    bool empty() const;
    std::size_t count() const;
};

/// Interior nodes within distance r of `center`.
CompactSpec compact_ball(const Lattice& lattice, const std::vector<double>& center, double r, std::string name);

/// Solver configuration shared by all capacity computations on one lattice.
/// The boundary value is 0 and the density is 0 regardless of the lattice's
/// own problem data.
struct CapacityEngine {
    LatticePtr lattice;
    std::vector<OperatorSample> samples;
    SolverOptions options;
};

/// Discrete relative extremal function: the maximal subsolution of the f = 0
/// Bellman problem with u = 0 on the boundary and u <= -1 on K. Throws when K
/// meets the boundary.
GridFunction relative_extremal(const CompactSpec& K, const CapacityEngine& engine);

struct CapacityValue {
    double over_omega = 0.0;  // lattice integral of the Bellman-form density of u_K over Omega
    double over_k = 0.0;      // same integral restricted to K
    double volume = 0.0;      // lattice volume of K
    GridFunction extremal;
};

CapacityValue capacity_of_compact(const CompactSpec& K, const CapacityEngine& engine);

struct SublevelRow {
    double t = 0.0, s = 0.0;
    double capacity = 0.0;  // cap({u - v < -t - s})
    double lhs = 0.0;       // s^n cap
    double rhs = 0.0;       // integral of (Delta u)^n over {u - v < -t}
    bool holds = false;     // lhs <= rhs (1 + tolerance)
};

struct SublevelReport {
    std::vector<SublevelRow> rows;
    double min_boundary_gap = 0.0;  // min of psi_u - psi_v on sampled boundary points
    bool all_hold = true;
};

/// Sublevel capacity inequality. `u_scheme` provides the density of u (its
/// own boundary data closes the boundary arms); `v_boundary` is the boundary
/// value of v, used with u's to check liminf (u - v) > 0.
SublevelReport sublevel_capacity_check(const GridFunction& u, const GridFunction& v, const BellmanScheme& u_scheme,
                                       const PointFunction& u_boundary, const PointFunction& v_boundary,
                                       const std::vector<double>& ts, const std::vector<double>& ss,
                                       const CapacityEngine& engine, double tolerance = 0.05);

struct VolumeCapacityRow {
    std::string name;
    double f_integral = 0.0;
    double capacity = 0.0;
    double ratio = 0.0;  // f_integral / capacity^{alpha/q}
};

struct VolumeCapacityReport {
    std::vector<VolumeCapacityRow> rows;
    double alpha = 1.5;
    double exponent_used = 0.0;  // alpha / q
    double D_fit = 0.0;
};

/// Fits D in  int_E f dV <= D cap(E)^{alpha/q}  with alpha = 1.5. Requires p > 2.
VolumeCapacityReport volume_capacity_fit(const GridFunction& f, const std::vector<CompactSpec>& sets,
                                         const Rational& p, const CapacityEngine& engine);

}  // namespace qmap
