#include "bellxs/bell_xsec.hpp"

#include "bellxs/angles.hpp"
#include "bellxs/polarimetry.hpp"

namespace bellxs {

StateFamily family_of(BellState state) {
  return (state == BellState::PsiPlus || state == BellState::PsiMinus) ? StateFamily::Psi
                                                                       : StateFamily::Phi;
}

double ddxsec_kn(BellState state, const JointKinematics& jk) {
  const TransitionMatrix t_i = transition_matrix(jk.theta_i, jk.e_oi);
  const TransitionMatrix t_s = transition_matrix(jk.theta_s, jk.e_os);
  const StokesVector signal_state =
      family_of(state) == StateFamily::Psi ? StokesVector::minus() : StokesVector::plus();
  double sum = 0.0;
  for (int a = 0; a < 2; ++a) {
    const double setting = a * (kPi / 2.0);
    const double idler = detected_intensity(t_i, rotation_matrix(setting), StokesVector::plus());
    const double signal =
        detected_intensity(t_s, rotation_matrix(jk.eta + setting), signal_state);
    sum += idler * signal;
  }
  return sum / 8.0;
}

double kn_product(const JointKinematics& jk) {
  const double arm_i = arm_intensity(jk.theta_i, jk.e_oi, 0.0, StokesVector::unpolarized());
  const double arm_s = arm_intensity(jk.theta_s, jk.e_os, 0.0, StokesVector::unpolarized());
  return 0.5 * arm_i * arm_s;
}

}  // namespace bellxs
