#pragma once

namespace bellxs {

/// Photon energy in electron rest-mass units (1 mc^2 = 511 keV).
struct PhotonEnergy {
  double value{};
};

/// Electron binding energy, same units as PhotonEnergy.
struct BindingEnergy {
  double value{};
};

inline constexpr double kKevPerMc2 = 511.0;

/// Converts an energy in keV to mc^2 units. Throws std::domain_error for
/// negative input.
[[nodiscard]] PhotonEnergy kev_to_mc2(double energy_kev);

[[nodiscard]] double mc2_to_kev(PhotonEnergy energy);

/// Compton-scattered photon energy at angle theta for a free electron,
/// E' = E_max / (1 + E_max (1 - cos theta)). Monotonically decreasing in
/// theta on [0, pi]. Throws std::domain_error for negative e_max.
[[nodiscard]] PhotonEnergy scattered_energy(PhotonEnergy e_max, double theta);

/// Scattered energy when the target electron is bound: the incident energy
/// is first reduced by the binding energy, then scattered as a free
/// electron would. Throws std::domain_error when e_b >= e_o (scattering is
/// kinematically forbidden) or when e_b < 0.
[[nodiscard]] PhotonEnergy scattered_energy_bound(PhotonEnergy e_o, BindingEnergy e_b,
                                                  double theta);

}  // namespace bellxs
