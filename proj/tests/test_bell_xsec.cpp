#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "bellxs/angles.hpp"
#include "bellxs/bell_xsec.hpp"
#include "bellxs/kinematics.hpp"

using namespace bellxs;

namespace {

JointKinematics random_kinematics(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(0.02, kPi - 0.02);
  std::uniform_real_distribution<double> azimuth(-2.0 * kPi, 2.0 * kPi);
  std::uniform_real_distribution<double> energy(0.005, 1.5);
  return {angle(rng), angle(rng), azimuth(rng), PhotonEnergy{energy(rng)},
          PhotonEnergy{energy(rng)}};
}

}  // namespace

TEST_CASE("state family classification") {
  CHECK(family_of(BellState::PsiPlus) == StateFamily::Psi);
  CHECK(family_of(BellState::PsiMinus) == StateFamily::Psi);
  CHECK(family_of(BellState::PhiPlus) == StateFamily::Phi);
  CHECK(family_of(BellState::PhiMinus) == StateFamily::Phi);
}

TEST_CASE("two-setting sum reference values") {
  const JointKinematics perp{kPi / 2.0, kPi / 2.0, kPi / 2.0, PhotonEnergy{1.0},
                             PhotonEnergy{1.0}};
  CHECK(ddxsec_kn(BellState::PsiPlus, perp) == doctest::Approx(0.0126953125).epsilon(1e-13));

  const JointKinematics aligned{kPi / 2.0, kPi / 2.0, 0.0, PhotonEnergy{1.0},
                                PhotonEnergy{1.0}};
  CHECK(ddxsec_kn(BellState::PhiPlus, aligned) ==
        doctest::Approx(0.0126953125).epsilon(1e-13));

  CHECK(kn_product(perp) == doctest::Approx(0.017578125).epsilon(1e-13));
  const JointKinematics forward{0.0, 0.0, 0.7, PhotonEnergy{1.0}, PhotonEnergy{1.0}};
  CHECK(kn_product(forward) == 0.5);
}

TEST_CASE("the phase sign of a Bell state never enters") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const JointKinematics jk = random_kinematics(rng);
    CHECK(ddxsec_kn(BellState::PsiPlus, jk) == ddxsec_kn(BellState::PsiMinus, jk));
    CHECK(ddxsec_kn(BellState::PhiPlus, jk) == ddxsec_kn(BellState::PhiMinus, jk));
  }
}

TEST_CASE("family sum matches the unpolarized product") {
  const std::array<double, 2> energies{0.0245, 1.0};
  const std::array<double, 5> etas{0.0, kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.1};
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double theta_i = i * kPi / 11.0;
      const double theta_s = j * kPi / 11.0;
      for (const double eta : etas) {
        for (const double e_i : energies) {
          for (const double e_s : energies) {
            const JointKinematics jk{theta_i, theta_s, eta, PhotonEnergy{e_i},
                                     PhotonEnergy{e_s}};
            const double total =
                ddxsec_kn(BellState::PsiPlus, jk) + ddxsec_kn(BellState::PhiPlus, jk);
            CHECK(std::abs(total / kn_product(jk) - 1.0) <= 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("families swap under a quarter-turn of the relative azimuth") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    JointKinematics jk = random_kinematics(rng);
    jk.eta = kPi / 2.0;
    const double psi_perp = ddxsec_kn(BellState::PsiPlus, jk);
    const double phi_perp = ddxsec_kn(BellState::PhiPlus, jk);
    jk.eta = 0.0;
    const double psi_par = ddxsec_kn(BellState::PsiPlus, jk);
    const double phi_par = ddxsec_kn(BellState::PhiPlus, jk);
    CHECK(psi_perp == phi_par);
    CHECK(psi_par == phi_perp);
  }
}

TEST_CASE("cross section is periodic in eta with period pi") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const JointKinematics jk = random_kinematics(rng);
    JointKinematics shifted = jk;
    shifted.eta = jk.eta + kPi;
    const double base = ddxsec_kn(BellState::PsiPlus, jk);
    CHECK(ddxsec_kn(BellState::PsiPlus, shifted) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("unpolarized product ignores eta") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const JointKinematics jk = random_kinematics(rng);
    JointKinematics shifted = jk;
    shifted.eta = jk.eta + 1.234;
    CHECK(kn_product(jk) == kn_product(shifted));
  }
}

TEST_CASE("cross sections stay positive") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const JointKinematics jk = random_kinematics(rng);
    CHECK(ddxsec_kn(BellState::PsiPlus, jk) > 0.0);
    CHECK(ddxsec_kn(BellState::PhiPlus, jk) > 0.0);
    CHECK(kn_product(jk) > 0.0);
  }
}
