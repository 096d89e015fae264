#pragma once

#include "qmap/hyperhermitian.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qmap {

/// S(a) with Delta_a v = trace(S(a) * Hess v), extracted by applying the
/// symbolic Delta_a to every monomial x_p x_q. Throws if the raw coefficient
/// table is not symmetric.
Eigen::MatrixXd delta_a_real_matrix(const HyperhermitianQ& a);
/// Same matrix for a floating-point direction, assembled from cached exact
/// basis matrices (S is linear in a).
Eigen::MatrixXd delta_a_real_matrix(const HyperhermitianD& a);

struct StencilArm {
    std::vector<int> v;    // primitive lattice direction, first nonzero entry positive
    double lambda = 0.0;   // coefficient of the unit-direction second derivative
    double weight = 0.0;   // lambda / (|v| h)^2, the weight of the plain second difference
    friend bool operator==(const StencilArm&, const StencilArm&) = default;
};

struct StencilOptions {
    int budget = 2;              // max |v_i| of lattice directions
    double angle_tolerance = 1.0472;  // radians
};

/// A sampled Bellman direction together with its monotone discretisation.
struct OperatorSample {
    HyperhermitianD a;
    Eigen::MatrixXd S;
    std::vector<StencilArm> arms;
    double consistency_error = 0.0;  // largest eigenvector rounding angle
};

/// Eigendecomposes S and replaces every eigenvector by the closest lattice
/// direction within the budget. Throws PreconditionError when an angle
/// exceeds the tolerance or S is not positive semidefinite.
OperatorSample build_stencil(const Eigen::MatrixXd& S, double h, const StencilOptions& options);

/// One stencil per direction; directions yielding identical stencils are kept
/// once, in first-seen order.
std::vector<OperatorSample> make_operator_samples(const std::vector<HyperhermitianD>& directions, double h,
                                                  const StencilOptions& options);

/// Primitive lattice directions with max |v_i| <= budget, canonical sign.
const std::vector<std::vector<int>>& lattice_directions(std::size_t dim, int budget);

}  // namespace qmap
