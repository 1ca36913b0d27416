#include "bellxs/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "bellxs/angles.hpp"

namespace bellxs {

double wrap_azimuth(double phi) {
  double r = std::fmod(phi, 2.0 * kPi);
  if (r < 0.0) {
    r += 2.0 * kPi;
  }
  if (r == 2.0 * kPi) {
    r = 0.0;
  }
  return r;
}

DetectorAzimuths::DetectorAzimuths(double phi_idler, double phi_signal)
    : phi_i(wrap_azimuth(phi_idler)), phi_s(wrap_azimuth(phi_signal)) {}

double relative_azimuth(const DetectorAzimuths& azimuths, const PhaseMatching& pm) {
  const double c = std::cos(azimuths.phi_i) * std::cos(azimuths.phi_s) +
                   std::cos(pm.delta_theta_is) *
                       (std::sin(azimuths.phi_i) * std::sin(azimuths.phi_s));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

AzimuthPair arrangement_azimuths(ArrangementKind kind, const PhaseMatching& pm) {
  const bool energy = kind == ArrangementKind::EnergyParam;
  const double phi_i = energy ? 0.0 : kPi / 2.0;
  const double phi_s_for_max = energy ? kPi / 2.0 : 0.0;
  const double phi_s_for_min = energy ? 0.0 : kPi / 2.0;
  return {relative_azimuth(DetectorAzimuths{phi_i, phi_s_for_max}, pm),
          relative_azimuth(DetectorAzimuths{phi_i, phi_s_for_min}, pm)};
}

}  // namespace bellxs
