#pragma once

#include "bellxs/kinematics.hpp"

namespace bellxs {

/// The four maximally entangled two-photon polarization states.
enum class BellState { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

/// Psi and Phi members of a family share every observable here; the phase
/// sign never enters an intensity.
enum class StateFamily { Psi, Phi };

[[nodiscard]] StateFamily family_of(BellState state);

/// Kinematic configuration of the two scatters: polar angles, relative
/// azimuth between the detector arms, and incident energies (idler i,
/// signal s) in mc^2 units.
struct JointKinematics {
  double theta_i{};
  double theta_s{};
  double eta{};
  PhotonEnergy e_oi{};
  PhotonEnergy e_os{};
};

/// Double-differential Klein-Nishina cross section for an annihilation-type
/// Bell pair, as the two-setting sum
///   (1/8) sum_a <I|T_i M(a pi/2)|+> <I|T_s M(eta + a pi/2)|s2>
/// with s2 = |-> for the Psi family and |+> for the Phi family.
[[nodiscard]] double ddxsec_kn(BellState state, const JointKinematics& jk);

/// Product form (1/2) <I|T_i|u><I|T_s|u> of the unpolarized arms; equals
/// ddxsec_kn(Psi) + ddxsec_kn(Phi) at any eta.
[[nodiscard]] double kn_product(const JointKinematics& jk);

}  // namespace bellxs
