#pragma once

#include <array>

#include "bellxs/kinematics.hpp"

namespace bellxs {

/// Stokes vector (I, Q, U, V) in the linear-polarization basis of the
/// scattering plane. |+> is polarized perpendicular to the plane, |-> is
/// polarized in the plane.
struct StokesVector {
  double i{};
  double q{};
  double u{};
  double v{};

  [[nodiscard]] static constexpr StokesVector plus() { return {1.0, 1.0, 0.0, 0.0}; }
  [[nodiscard]] static constexpr StokesVector minus() { return {1.0, -1.0, 0.0, 0.0}; }
  [[nodiscard]] static constexpr StokesVector unpolarized() { return {1.0, 0.0, 0.0, 0.0}; }
};

/// 4x4 Mueller matrix, row-major.
struct Mueller4 {
  std::array<double, 16> e{};

  [[nodiscard]] double at(int row, int col) const { return e[4 * row + col]; }
  [[nodiscard]] StokesVector apply(const StokesVector& s) const;
};

/// Frame rotation by azimuth psi: Q and U mix through the angle 2*psi,
/// I and V are unchanged.
struct RotationMatrix : Mueller4 {
  double psi{};
};

/// Compton transition matrix at scattering angle theta for incident energy
/// e_o, in classical-electron-radius-squared units. With
/// k = 1 / (1 + E (1 - cos theta)) the nonzero entries are
///
///   (k^2/2) * [ k+1/k-sin^2   sin^2        .            .
///               sin^2         1+cos^2      .            .
///               .             .            2 cos        .
///               .             .            .            (k+1/k) cos ]
///
/// The +sin^2 coupling makes |+> (perpendicular to the scattering plane)
/// the high-intensity channel.
struct TransitionMatrix : Mueller4 {
  double theta{};
  PhotonEnergy e_o{};
};

[[nodiscard]] RotationMatrix rotation_matrix(double psi);

/// Throws std::domain_error unless e_o > 0.
[[nodiscard]] TransitionMatrix transition_matrix(double theta, PhotonEnergy e_o);

/// Intensity <I| T(theta; e_o) M(psi) |s> seen by one detector arm.
[[nodiscard]] double detected_intensity(const TransitionMatrix& t, const RotationMatrix& m,
                                        const StokesVector& s);

[[nodiscard]] double arm_intensity(double theta, PhotonEnergy e_o, double psi,
                                   const StokesVector& s);

/// Closed-form Klein-Nishina intensity for a linearly polarized beam whose
/// polarization makes angle pol_angle with the scattering plane:
/// (k^2/2) (k + 1/k - 2 sin^2 theta cos^2 pol_angle). Independent of the
/// matrix pipeline; used to cross-check it.
[[nodiscard]] double kn_polarized_oracle(double theta, PhotonEnergy e_o, double pol_angle);

}  // namespace bellxs
