#include "bellxs/ratios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bellxs/angles.hpp"
#include "bellxs/incoherent.hpp"
#include "bellxs/polarimetry.hpp"

namespace bellxs {

namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

double as_family(double psi_value, StateFamily family) {
  return family == StateFamily::Psi ? psi_value : 1.0 / psi_value;
}

double safe_ratio(double num, double den) {
  if (den == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

/// Evaluates fn over xs, spilling onto worker threads only for large grids;
/// out[i] always holds fn(xs[i]) so the result is order-independent.
std::vector<double> map_samples(const std::function<double(double)>& fn,
                                const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  const std::size_t n = xs.size();
  const unsigned hardware = std::thread::hardware_concurrency();
  if (n < 4096 || hardware < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = fn(xs[i]);
    }
    return out;
  }

  const unsigned workers = std::min<unsigned>(hardware, 8);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto work = [&] {
    constexpr std::size_t kBlock = 256;
    for (;;) {
      const std::size_t begin = next.fetch_add(kBlock);
      if (begin >= n) {
        return;
      }
      const std::size_t end = std::min(begin + kBlock, n);
      try {
        for (std::size_t i = begin; i < end; ++i) {
          out[i] = fn(xs[i]);
        }
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return out;
}

std::vector<double> sample_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long j = 0; j <= n; ++j) {
    grid.push_back(lo + static_cast<double>(j) * step);
  }
  if (grid.back() < hi) {
    grid.push_back(hi);
  }
  return grid;
}

}  // namespace

double ratio_nd(double theta, PhotonEnergy e_oi, PhotonEnergy e_os, StateFamily family) {
  const TransitionMatrix t_i = transition_matrix(theta, e_oi);
  const TransitionMatrix t_s = transition_matrix(theta, e_os);
  double num = 0.0;
  double den = 0.0;
  for (int a = 0; a < 2; ++a) {
    const RotationMatrix rot = rotation_matrix(a * (kPi / 2.0));
    const double idler = detected_intensity(t_i, rot, StokesVector::plus());
    num += idler * detected_intensity(t_s, rot, StokesVector::plus());
    den += idler * detected_intensity(t_s, rot, StokesVector::minus());
  }
  return as_family(safe_ratio(num, den), family);
}

double ratio_d(double theta, PhotonEnergy e_o, StateFamily family) {
  const TransitionMatrix t = transition_matrix(theta, e_o);
  const double a = t.apply(StokesVector::plus()).i;
  const double b = t.apply(StokesVector::minus()).i;
  return as_family(safe_ratio(a * a + b * b, 2.0 * a * b), family);
}

double rho_nd(double theta, PhotonEnergy e_oi, PhotonEnergy e_os, const PhaseMatching& pm,
              StateFamily family) {
  const TransitionMatrix t_i = transition_matrix(theta, e_oi);
  const TransitionMatrix t_s = transition_matrix(theta, e_os);
  double num = 0.0;
  double den = 0.0;
  for (int a = 0; a < 2; ++a) {
    const double setting = a * (kPi / 2.0);
    const RotationMatrix rot = rotation_matrix(setting);
    const double idler = detected_intensity(t_i, rot, StokesVector::plus());
    num += idler * detected_intensity(t_s, rot, StokesVector::plus());
    den += idler * detected_intensity(t_s, rotation_matrix(pm.delta_theta_is + setting),
                                      StokesVector::minus());
  }
  return as_family(safe_ratio(num, den), family);
}

RatioResult ratio_with_band(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                            StateFamily family, BindingEnergy e_b) {
  const double value = ratio_nd(theta, e_oi, e_os, family);
  const double precision = ia_precision({e_oi, e_os, theta, theta, e_b});
  return {theta, value, kHalfSqrt2 * value * precision};
}

RatioResult rho_with_band(double theta, PhotonEnergy e_oi, PhotonEnergy e_os,
                          const PhaseMatching& pm, StateFamily family, BindingEnergy e_b) {
  const double value = rho_nd(theta, e_oi, e_os, pm, family);
  const double precision = ia_precision({e_oi, e_os, theta, theta, e_b});
  return {theta, value, kHalfSqrt2 * value * precision};
}

PeakReport peak_scan(const std::function<double(double)>& fn, double theta_min,
                     double theta_max, double coarse_step, double refine_step) {
  if (!(theta_min >= 0.0) || !(theta_max <= kPi) || !(theta_min < theta_max)) {
    throw std::domain_error("peak scan range must be a nonempty interval within [0, pi]");
  }
  if (!(coarse_step > 0.0) || !(refine_step > 0.0)) {
    throw std::domain_error("peak scan steps must be positive");
  }

  double best_theta = theta_min;
  double best_value = -std::numeric_limits<double>::infinity();
  const auto consider = [&](const std::vector<double>& xs, const std::vector<double>& vs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (vs[i] > best_value || (vs[i] == best_value && xs[i] < best_theta)) {
        best_theta = xs[i];
        best_value = vs[i];
      }
    }
  };

  const std::vector<double> coarse = sample_grid(theta_min, theta_max, coarse_step);
  consider(coarse, map_samples(fn, coarse));

  const double lo = std::max(theta_min, best_theta - coarse_step);
  const double hi = std::min(theta_max, best_theta + coarse_step);
  const std::vector<double> fine = sample_grid(lo, hi, refine_step);
  consider(fine, map_samples(fn, fine));

  return {best_theta, best_value, refine_step};
}

}  // namespace bellxs
