#include "bellxs/polarimetry.hpp"

#include <cmath>
#include <stdexcept>

namespace bellxs {

StokesVector Mueller4::apply(const StokesVector& s) const {
  const std::array<double, 4> in{s.i, s.q, s.u, s.v};
  std::array<double, 4> out{};
  for (int row = 0; row < 4; ++row) {
    double acc = 0.0;
    for (int col = 0; col < 4; ++col) {
      acc += e[4 * row + col] * in[col];
    }
    out[row] = acc;
  }
  return {out[0], out[1], out[2], out[3]};
}

RotationMatrix rotation_matrix(double psi) {
  const double c = std::cos(2.0 * psi);
  const double s = std::sin(2.0 * psi);
  RotationMatrix m;
  m.e = {1.0, 0.0, 0.0, 0.0,
         0.0, c,   s,   0.0,
         0.0, -s,  c,   0.0,
         0.0, 0.0, 0.0, 1.0};
  m.psi = psi;
  return m;
}

TransitionMatrix transition_matrix(double theta, PhotonEnergy e_o) {
  if (!(e_o.value > 0.0)) {
    throw std::domain_error("incident energy must be positive");
  }
  const double cos_theta = std::cos(theta);
  const double sin_theta = std::sin(theta);
  const double sin2 = sin_theta * sin_theta;
  const double k = 1.0 / (1.0 + e_o.value * (1.0 - cos_theta));
  const double k_sum = k + 1.0 / k;
  const double pre = 0.5 * k * k;
  TransitionMatrix t;
  t.e = {pre * (k_sum - sin2), pre * sin2,                       0.0,                   0.0,
         pre * sin2,           pre * (1.0 + cos_theta * cos_theta), 0.0,                0.0,
         0.0,                  0.0,                          pre * (2.0 * cos_theta),   0.0,
         0.0,                  0.0,                          0.0,  pre * (k_sum * cos_theta)};
  t.theta = theta;
  t.e_o = e_o;
  return t;
}

double detected_intensity(const TransitionMatrix& t, const RotationMatrix& m,
                          const StokesVector& s) {
  return t.apply(m.apply(s)).i;
}

double arm_intensity(double theta, PhotonEnergy e_o, double psi, const StokesVector& s) {
  return detected_intensity(transition_matrix(theta, e_o), rotation_matrix(psi), s);
}

double kn_polarized_oracle(double theta, PhotonEnergy e_o, double pol_angle) {
  if (!(e_o.value > 0.0)) {
    throw std::domain_error("incident energy must be positive");
  }
  const double sin_theta = std::sin(theta);
  const double cos_chi = std::cos(pol_angle);
  const double k = 1.0 / (1.0 + e_o.value * (1.0 - std::cos(theta)));
  return 0.5 * k * k *
         (k + 1.0 / k - 2.0 * sin_theta * sin_theta * cos_chi * cos_chi);
}

}  // namespace bellxs
