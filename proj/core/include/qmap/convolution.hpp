#pragma once

#include "qmap/grid.hpp"

#include <optional>
#include <vector>

namespace qmap {

/// Nodes of Omega_delta = {dist(x, boundary) >= delta}.
std::vector<char> eroded_mask(const Lattice& lattice, double delta);

/// Integer offsets o with |o| h <= delta.
std::vector<std::vector<int>> ball_offsets(std::size_t dim, double h, double delta);

/// Volume of the unit ball in R^dim; pi^{2n} / (2n)! for dim = 4n.
double unit_ball_volume(std::size_t dim);

/// u_delta(x) = max of u over lattice nodes within distance delta, on
/// Omega_delta. Requires h <= delta <= inradius.
GridFunction sup_convolution(const GridFunction& u, double delta);

/// Lattice average of u over the delta-ball, on Omega_delta. Requires
/// 2h <= delta <= inradius.
GridFunction mean_convolution(const GridFunction& u, double delta);

struct GlueResult {
    GridFunction u_tilde;
    double c0 = 0.0;
};

/// max(u_delta, u + c0 delta^beta) on Omega_delta and u + c0 delta^beta on the
/// rest of the closed domain. Without c0, it is the largest (u_delta - u) /
/// delta^beta over nodes of Omega_delta adjacent to its complement.
GlueResult glue_extension(const GridFunction& u, double delta, double beta, std::optional<double> c0 = {});

/// Convolution with the normalised lattice kernel (1 - |x/eps|^2)^4, on
/// Omega_eps. Requires 2h <= eps <= inradius.
GridFunction mollify(const GridFunction& u, double eps);

/// Midpoint-rule L2 norm of the discrete gradient: forward differences on
/// every lattice edge with both ends defined, edges between two boundary
/// nodes at half weight.
double gradient_l2(const GridFunction& u);

/// Lattice integral of the Omega_{2n} coefficient of Delta u ^ beta_n^{n-1},
/// beta_n = Delta(|q|^2) / 8, over interior nodes with a full central
/// difference neighbourhood.
double ma_mass(const GridFunction& u);

/// Real coefficients M with coefficient(Delta u ^ beta_n^{n-1}) = sum_{p<=q} M_pq d_p d_q u.
const std::vector<double>& ma_mass_operator(std::size_t n);

}  // namespace qmap
