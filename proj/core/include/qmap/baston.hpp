#pragma once

#include "qmap/form.hpp"
#include "qmap/hyperhermitian.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qmap {

/// Entry (j, alpha) of the first-order operator matrix on R^{4n}. For block l:
///   (2l, 0)   = d_{4l}   + i d_{4l+1}     (2l, 1)   = -d_{4l+2} - i d_{4l+3}
///   (2l+1, 0) = d_{4l+2} - i d_{4l+3}     (2l+1, 1) =  d_{4l}   - i d_{4l+1}
ComplexPoly nabla_apply(std::size_t j, int alpha, const ComplexPoly& p);

/// d_alpha F = sum_{k,I} nabla_{k alpha} f_I omega^k ^ omega^I.
Form d_alpha(const Form& f, int alpha);

/// Delta u = d_0 d_1 u, a 2-form.
Form delta_op(const RealPoly& u);

/// Delta_ij u = 1/2 (nabla_{i0} nabla_{j1} u - nabla_{i1} nabla_{j0} u).
ComplexPoly delta_ij(std::size_t i, std::size_t j, const RealPoly& u);

/// Omega_{2n} coefficient of Delta u_1 ^ ... ^ Delta u_n, by wedge products.
ComplexPoly mixed_ma_wedge(std::span<const RealPoly> us);
/// Same coefficient from the signed permutation sum over Delta_ij products.
ComplexPoly mixed_ma_permutation(std::span<const RealPoly> us);
/// Evaluates both routes and throws if they disagree.
ComplexPoly mixed_ma(std::span<const RealPoly> us);

/// Quaternionic Hessian Q_jk = sum_{a,b} e_a conj(e_b) d_{4j+a} d_{4k+b} u with
/// e = (1, i, j, k), entries as quaternion polynomials.
std::vector<QuatPoly> quaternionic_hessian(const RealPoly& u);

/// The same Hessian evaluated at a point. Always hyperhermitian for real u.
HyperhermitianQ quaternionic_hessian_at(const RealPoly& u, std::span<const Rational> point);

/// Delta_a v = 1/2 Re sum_{j,k} a_kj Q_jk(v), as a real polynomial.
RealPoly delta_a_apply(const HyperhermitianQ& a, const RealPoly& v);

/// |q|^2 = sum_i x_i^2 over 4n variables.
RealPoly norm_squared(std::size_t n);

struct MooreCalibration {
    std::size_t n = 0;
    Rational c_n;  ///< Delta_n(u, ..., u) / MooreDet(Hessian u)
    std::size_t samples = 0;
    std::string convention_note;
};

/// c_n from |q|^2, then confirmed constant on `samples` random strictly
/// positive quadratics. Throws PreconditionError if the ratio varies.
MooreCalibration calibrate_moore_constant(std::size_t n, std::size_t samples = 20, std::uint64_t seed = 2024);

/// Note recorded in calibration reports about the operator table in use.
std::string operator_convention_note();

/// int_box h d_alpha T + int_box d_alpha h ^ T for a (2n-1)-form T. The box
/// integral of a top form is the integral of its Omega_{2n} coefficient.
/// Requires h to vanish identically on every face of the box.
GaussRational stokes_check(const Form& t, const RealPoly& h, std::span<const Interval> box, int alpha);

}  // namespace qmap
