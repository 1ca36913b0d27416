#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellxs/bell_xsec.hpp"
#include "bellxs/kinematics.hpp"

namespace bellxs {

/// Raised when a scattering-function file violates the expected format; the
/// message names the offending line.
class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One sample of the incoherent scattering function: momentum transfer x in
/// inverse Angstrom and the value S(x).
struct ScatteringSample {
  double x{};
  double s{};
};

/// Tabulated incoherent scattering function S(x) for one element, evaluated
/// by linear interpolation with endpoint clamping.
///
/// File format (CSV): header line "x_inv_angstrom,s", then rows "x,s" with
/// x strictly increasing and s nondecreasing in [0, Z].
class ScatteringFunctionTable {
 public:
  [[nodiscard]] static ScatteringFunctionTable load(std::istream& in, int element_z);
  [[nodiscard]] static ScatteringFunctionTable load_file(const std::string& path,
                                                         int element_z);

  /// Single-point table S == 1: every electron scatters as if free.
  [[nodiscard]] static ScatteringFunctionTable free_electron(int element_z = 1);

  [[nodiscard]] double evaluate_at_x(double x) const;
  [[nodiscard]] int element_z() const { return element_z_; }
  [[nodiscard]] const std::vector<ScatteringSample>& rows() const { return rows_; }

 private:
  ScatteringFunctionTable() = default;

  std::vector<ScatteringSample> rows_;
  int element_z_ = 1;
};

/// S at the momentum transfer x = sin(theta/2) E / (hc), with E in keV and
/// hc = 12.39842 keV*Angstrom.
[[nodiscard]] double evaluate_s(const ScatteringFunctionTable& table, double theta,
                                PhotonEnergy e_o);

/// Incoherent-scattering corrected cross section: the Klein-Nishina value
/// scaled by S for each arm independently.
[[nodiscard]] double incoherent_ddxsec(BellState state, const JointKinematics& jk,
                                       const ScatteringFunctionTable& table);

struct PrecisionInput {
  PhotonEnergy e_oi{};
  PhotonEnergy e_os{};
  double theta_i{};
  double theta_s{};
  BindingEnergy e_b{};
};

/// Relative precision of the impulse approximation: the quadrature sum over
/// both arms of E_b^2 / (E_o - E')^2 with E' the bound-corrected scattered
/// energy. Exactly zero for free electrons (e_b == 0).
[[nodiscard]] double ia_precision(const PrecisionInput& input);

struct BandedValue {
  double central{};
  double half_width{};
};

/// Incoherent cross section together with its impulse-approximation band,
/// half_width = central * precision / 2.
[[nodiscard]] BandedValue xsec_with_band(BellState state, const JointKinematics& jk,
                                         const ScatteringFunctionTable& table,
                                         BindingEnergy e_b);

}  // namespace bellxs
