#pragma once

#include <functional>

#include "bellxs/bell_xsec.hpp"
#include "bellxs/geometry.hpp"
#include "bellxs/kinematics.hpp"

namespace bellxs {

/// Azimuthal cross-section ratio R(theta) between the parallel and
/// perpendicular detector settings for equal polar angles theta on both
/// arms. For the Psi family
///   R = (A_i A_s + B_i B_s) / (A_i B_s + B_i A_s)
/// with A = <I|T|+> and B = <I|T|->; the Phi family value is the exact
/// reciprocal. A vanishing denominator yields IEEE infinity.
[[nodiscard]] double ratio_nd(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                              StateFamily family);

/// Degenerate-energy specialization, R = (A^2 + B^2) / (2 A B).
[[nodiscard]] double ratio_d(double theta, PhotonEnergy e_o, StateFamily family);

/// Ratio for non-collinear beams with opening angle pm.delta_theta_is: the
/// denominator setting rotates the signal analyzer by the opening angle.
/// Reduces to ratio_nd when the opening angle is zero.
[[nodiscard]] double rho_nd(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                            const PhaseMatching& pm, StateFamily family);

struct RatioResult {
  double theta{};
  double value{};
  double half_width{};
};

/// Ratio with its impulse-approximation band, half_width =
/// (sqrt(2)/2) * value * precision, evaluated with both arms at theta.
[[nodiscard]] RatioResult ratio_with_band(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                                          StateFamily family, BindingEnergy e_b);

[[nodiscard]] RatioResult rho_with_band(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                                        const PhaseMatching& pm, StateFamily family,
                                        BindingEnergy e_b);

struct PeakReport {
  double theta_star{};
  double value_star{};
  double grid_step{};
};

/// Two-stage grid argmax of fn over [theta_min, theta_max]: a coarse pass,
/// then a refined pass one coarse step around the best coarse point. The
/// reported peak is the maximum over all evaluated samples; ties resolve to
/// the lowest theta; grid_step echoes the refine step as the angular
/// uncertainty. Throws std::domain_error for an empty range or nonpositive
/// steps. Large grids are evaluated on worker threads with a
/// deterministic, index-ordered reduction.
[[nodiscard]] PeakReport peak_scan(const std::function<double(double)>& fn, double theta_min,
                                   double theta_max, double coarse_step, double refine_step);

}  // namespace bellxs
