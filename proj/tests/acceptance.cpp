#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bellxs/angles.hpp"
#include "bellxs/bell_xsec.hpp"
#include "bellxs/geometry.hpp"
#include "bellxs/incoherent.hpp"
#include "bellxs/kinematics.hpp"
#include "bellxs/polarimetry.hpp"
#include "bellxs/ratios.hpp"
#include "bellxs/scan.hpp"

using namespace bellxs;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

double elapsed_ms(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

constexpr std::array<double, 4> kEnergies{0.0196, 0.0245, 0.0294, 1.0};

void criterion_degenerate_peak() {
  const auto start = clock_type::now();
  const PhotonEnergy e = kev_to_mc2(12.5);
  const PeakReport peak = peak_scan(
      [e](double theta) { return ratio_d(theta, e, StateFamily::Psi); },
      deg_to_rad(85.0), deg_to_rad(95.0), deg_to_rad(0.1), deg_to_rad(0.001));
  const double ms = elapsed_ms(start);
  const double theta_deg = rad_to_deg(peak.theta_star);
  const bool ok = std::abs(peak.value_star / 1713.04 - 1.0) <= 0.01 &&
                  std::abs(theta_deg - 89.98) <= 0.02 && ms < 1000.0;
  report(1, ok,
         fmt("degenerate 12.5 keV ratio peak %.2f at %.4f deg (want 1713.04 +-1%%, "
             "89.98 +-0.02 deg) in %.0f ms",
             peak.value_star, theta_deg, ms));
}

void criterion_nondegenerate_peak() {
  const auto start = clock_type::now();
  const PhotonEnergy e_oi = kev_to_mc2(10.0);
  const PhotonEnergy e_os = kev_to_mc2(15.0);
  const PeakReport peak = peak_scan(
      [&](double theta) { return ratio_nd(theta, e_oi, e_os, StateFamily::Psi); },
      deg_to_rad(85.0), deg_to_rad(95.0), deg_to_rad(0.1), deg_to_rad(0.001));
  const double ms = elapsed_ms(start);
  const bool ok = std::abs(peak.value_star / 1650.26 - 1.0) <= 0.01 && ms < 1000.0;
  report(2, ok,
         fmt("nondegenerate 10/15 keV ratio peak %.2f (want 1650.26 +-1%%) in %.0f ms",
             peak.value_star, ms));
}

void criterion_annihilation_peak() {
  const PhotonEnergy e{1.0};
  const PeakReport peak = peak_scan(
      [e](double theta) { return ratio_d(theta, e, StateFamily::Psi); },
      deg_to_rad(1.0), deg_to_rad(179.0), deg_to_rad(0.1), deg_to_rad(0.001));
  const double theta_deg = rad_to_deg(peak.theta_star);
  const bool ok = std::abs(peak.value_star / 2.85 - 1.0) <= 0.02 && theta_deg >= 81.0 &&
                  theta_deg <= 83.0;
  report(3, ok,
         fmt("511 keV ratio peak %.4f at %.3f deg (want 2.85 +-2%% in [81, 83] deg)",
             peak.value_star, theta_deg));
}

void criterion_sum_rule() {
  double worst = 0.0;
  long points = 0;
  for (int ji = 1; ji <= 30; ++ji) {
    for (int js = 1; js <= 30; ++js) {
      for (int kk = 0; kk < 12; ++kk) {
        for (const double ei : kEnergies) {
          for (const double es : kEnergies) {
            const JointKinematics jk{ji * kPi / 31.0, js * kPi / 31.0, kk * kPi / 12.0,
                                     PhotonEnergy{ei}, PhotonEnergy{es}};
            const double sum =
                ddxsec_kn(BellState::PsiPlus, jk) + ddxsec_kn(BellState::PhiPlus, jk);
            const double product = kn_product(jk);
            worst = std::max(worst, std::abs(sum / product - 1.0));
            ++points;
          }
        }
      }
    }
  }
  report(4, worst <= 1e-12,
         fmt("psi+phi cross sections rebuild the product term to %.2e relative "
             "(limit 1e-12, %ld grid points)",
             worst, points));
}

void criterion_swap_identities() {
  double worst = 0.0;
  for (int ji = 1; ji <= 30; ++ji) {
    for (int js = 1; js <= 30; ++js) {
      for (const double ei : kEnergies) {
        for (const double es : kEnergies) {
          const double ti = ji * kPi / 31.0;
          const double ts = js * kPi / 31.0;
          const PhotonEnergy eo_i{ei};
          const PhotonEnergy eo_s{es};
          const JointKinematics perp{ti, ts, kPi / 2.0, eo_i, eo_s};
          const JointKinematics parallel{ti, ts, 0.0, eo_i, eo_s};
          const double a = ddxsec_kn(BellState::PsiPlus, perp);
          const double b = ddxsec_kn(BellState::PhiPlus, parallel);
          const double c = ddxsec_kn(BellState::PsiPlus, parallel);
          const double d = ddxsec_kn(BellState::PhiPlus, perp);
          worst = std::max(worst, std::abs(a / b - 1.0));
          worst = std::max(worst, std::abs(c / d - 1.0));
        }
      }
    }
  }
  report(5, worst <= 1e-14,
         fmt("perpendicular/parallel swap between families holds to %.2e relative "
             "(limit 1e-14)",
             worst));
}

void criterion_reciprocity() {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> angle(0.02, kPi - 0.02);
  std::uniform_real_distribution<double> energy(0.005, 1.5);
  std::uniform_real_distribution<double> opening(0.0, kPi / 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = angle(rng);
    const PhotonEnergy e_oi{energy(rng)};
    const PhotonEnergy e_os{energy(rng)};
    const PhaseMatching pm{opening(rng)};
    worst = std::max(worst, std::abs(ratio_nd(theta, e_oi, e_os, StateFamily::Psi) *
                                         ratio_nd(theta, e_oi, e_os, StateFamily::Phi) -
                                     1.0));
    worst = std::max(worst, std::abs(ratio_d(theta, e_oi, StateFamily::Psi) *
                                         ratio_d(theta, e_oi, StateFamily::Phi) -
                                     1.0));
    worst = std::max(worst, std::abs(rho_nd(theta, e_oi, e_os, pm, StateFamily::Psi) *
                                         rho_nd(theta, e_oi, e_os, pm, StateFamily::Phi) -
                                     1.0));
  }
  report(6, worst <= 1e-12,
         fmt("psi*phi ratio products stay within %.2e of unity over 200 random points "
             "(limit 1e-12)",
             worst));
}

void criterion_geometry_reduction() {
  std::mt19937 rng(4321);
  std::uniform_real_distribution<double> angle(0.02, kPi - 0.02);
  std::uniform_real_distribution<double> energy(0.005, 1.5);
  std::uniform_real_distribution<double> azimuth(0.0, kPi);
  std::uniform_real_distribution<double> opening(0.0, kPi / 2.0);

  double worst_ratio = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = angle(rng);
    const PhotonEnergy e_oi{energy(rng)};
    const PhotonEnergy e_os{energy(rng)};
    const double collapsed = rho_nd(theta, e_oi, e_os, PhaseMatching{0.0}, StateFamily::Psi);
    const double direct = ratio_nd(theta, e_oi, e_os, StateFamily::Psi);
    worst_ratio = std::max(worst_ratio, std::abs(collapsed / direct - 1.0));
  }

  double worst_angle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double phi_s = azimuth(rng);
    const double eta = relative_azimuth(DetectorAzimuths{0.0, phi_s},
                                        PhaseMatching{opening(rng)});
    worst_angle = std::max(worst_angle, std::abs(eta - phi_s));
  }

  const bool ok = worst_ratio <= 1e-12 && worst_angle <= 1e-9;
  report(7, ok,
         fmt("zero opening angle collapses rho to R within %.2e; in-plane idler leaves "
             "eta == phi_s within %.2e rad",
             worst_ratio, worst_angle));
}

void criterion_closed_form() {
  double worst = 0.0;
  for (int deg = 1; deg <= 179; ++deg) {
    const double theta = deg_to_rad(deg);
    for (const double e : kEnergies) {
      const PhotonEnergy energy{e};
      const double plus_arm = arm_intensity(theta, energy, 0.0, StokesVector::plus());
      const double minus_arm = arm_intensity(theta, energy, 0.0, StokesVector::minus());
      worst = std::max(
          worst, std::abs(plus_arm / kn_polarized_oracle(theta, energy, kPi / 2.0) - 1.0));
      worst = std::max(worst,
                       std::abs(minus_arm / kn_polarized_oracle(theta, energy, 0.0) - 1.0));
    }
  }
  report(8, worst <= 1e-12,
         fmt("matrix pipeline matches the closed-form polarized intensity to %.2e "
             "relative (limit 1e-12)",
             worst));
}

void criterion_interference_dip() {
  const fs::path dir = fresh_dir("bellxs_acceptance_fig3a");
  (void)run_figure("fig3a", dir);
  std::ifstream in(dir / "fig3a.csv");
  std::string line;
  double smallest = 1.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    double theta = 0.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::istringstream row(line);
    char comma = 0;
    row >> theta >> comma >> sigma_max >> comma >> sigma_min;
    if (theta < 80.0 || theta > 100.0) continue;
    smallest = std::min(smallest, sigma_min / sigma_max);
  }
  report(9, smallest <= 1e-3,
         fmt("parallel/perpendicular cross-section quotient dips to %.2e near 90 deg "
             "(limit 1e-3)",
             smallest));
}

void criterion_ia_precision() {
  const PhotonEnergy e = kev_to_mc2(12.5);
  const BindingEnergy e_b{kev_to_mc2(0.0547).value};
  const double precision = ia_precision({e, e, kPi / 2.0, kPi / 2.0, e_b});
  const bool in_window = std::abs(precision - 0.0345) <= 0.0005;
  const bool away_from_coarse_quote = std::abs(precision - 0.08) > 0.02;
  report(10, in_window && away_from_coarse_quote,
         fmt("two-arm quadrature precision %.5f (want 0.0345 +-0.0005; the coarser "
             "8%% figure sometimes quoted for this setup is intentionally not "
             "reproduced, see README)",
             precision));
}

void criterion_determinism() {
  const fs::path dir_a = fresh_dir("bellxs_acceptance_det_a");
  const fs::path dir_b = fresh_dir("bellxs_acceptance_det_b");
  std::size_t files = 0;
  bool identical = true;
  for (const std::string& name : figure_names()) {
    const auto first = run_figure(name, dir_a);
    const auto second = run_figure(name, dir_b);
    identical = identical && first.size() == second.size();
    for (std::size_t idx = 0; idx < first.size() && identical; ++idx) {
      identical = read_file(first[idx]) == read_file(second[idx]);
      ++files;
    }
  }
  report(11, identical,
         fmt("repeated figure runs produced %zu byte-identical files", files));
}

}  // namespace

int main() {
  criterion_degenerate_peak();
  criterion_nondegenerate_peak();
  criterion_annihilation_peak();
  criterion_sum_rule();
  criterion_swap_identities();
  criterion_reciprocity();
  criterion_geometry_reduction();
  criterion_closed_form();
  criterion_interference_dip();
  criterion_ia_precision();
  criterion_determinism();
  return g_failures;
}
