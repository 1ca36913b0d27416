#pragma once

namespace bellxs {

/// Wraps an angle into [0, 2*pi).
[[nodiscard]] double wrap_azimuth(double phi);

/// Azimuthal detector positions (idler, signal) around their respective
/// beam axes, wrapped into [0, 2*pi) on construction.
struct DetectorAzimuths {
  DetectorAzimuths() = default;
  DetectorAzimuths(double phi_idler, double phi_signal);

  double phi_i{};
  double phi_s{};
};

/// Opening angle between the pair emission directions, radians in
/// [0, pi/2]. Zero means back-to-back beams.
struct PhaseMatching {
  double delta_theta_is{};
};

enum class ArrangementKind { EnergyParam, PhaseParam };

/// Pair of relative azimuths probed by an arrangement: the setting that
/// maximizes the Psi-family cross section and the one that minimizes it.
struct AzimuthPair {
  double eta_max{};
  double eta_min{};
};

/// Effective relative azimuth between the arms for non-collinear beams,
///   eta = acos(cos phi_i cos phi_s + cos(delta) sin phi_i sin phi_s),
/// which reduces to |phi_s - phi_i| when the beams are back-to-back and the
/// azimuths are coplanar.
[[nodiscard]] double relative_azimuth(const DetectorAzimuths& azimuths,
                                      const PhaseMatching& pm);

/// Detector settings for the two standard arrangements. EnergyParam keeps
/// the idler in the reference plane (phi_i = 0); PhaseParam puts it at
/// phi_i = pi/2 so the opening angle feeds the minimizing setting.
[[nodiscard]] AzimuthPair arrangement_azimuths(ArrangementKind kind, const PhaseMatching& pm);

}  // namespace bellxs
