#include "bellxs/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace bellxs {

PhotonEnergy kev_to_mc2(double energy_kev) {
  if (!(energy_kev >= 0.0)) {
    throw std::domain_error("energy in keV must be nonnegative");
  }
  return PhotonEnergy{energy_kev / kKevPerMc2};
}

double mc2_to_kev(PhotonEnergy energy) { return energy.value * kKevPerMc2; }

PhotonEnergy scattered_energy(PhotonEnergy e_max, double theta) {
  if (!(e_max.value >= 0.0)) {
    throw std::domain_error("maximum scattered energy must be nonnegative");
  }
  return PhotonEnergy{e_max.value / (1.0 + e_max.value * (1.0 - std::cos(theta)))};
}

PhotonEnergy scattered_energy_bound(PhotonEnergy e_o, BindingEnergy e_b, double theta) {
  if (!(e_b.value >= 0.0)) {
    throw std::domain_error("binding energy must be nonnegative");
  }
  if (!(e_o.value > e_b.value)) {
    throw std::domain_error("binding energy at or above incident energy: no scattering channel");
  }
  return scattered_energy(PhotonEnergy{e_o.value - e_b.value}, theta);
}

}  // namespace bellxs
