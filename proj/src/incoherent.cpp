#include "bellxs/incoherent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace bellxs {

namespace {

constexpr double kHcKevAngstrom = 12.39842;

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

}  // namespace

ScatteringFunctionTable ScatteringFunctionTable::load(std::istream& in, int element_z) {
  if (element_z < 1) {
    throw TableFormatError("element_z must be a positive integer");
  }
  int line_no = 0;
  const auto fail = [&line_no](const std::string& what) {
    throw TableFormatError("line " + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  ++line_no;
  if (!std::getline(in, line)) {
    fail("missing header 'x_inv_angstrom,s'");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != "x_inv_angstrom,s") {
    fail("expected header 'x_inv_angstrom,s', got '" + line + "'");
  }

  ScatteringFunctionTable table;
  table.element_z_ = element_z;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    double x = 0.0;
    double s = 0.0;
    if (comma == std::string::npos ||
        !parse_double(std::string_view(line).substr(0, comma), x) ||
        !parse_double(std::string_view(line).substr(comma + 1), s)) {
      fail("malformed row '" + line + "'");
    }
    if (!table.rows_.empty() && !(x > table.rows_.back().x)) {
      fail("x values must be strictly increasing");
    }
    if (!(s >= 0.0) || s > static_cast<double>(element_z)) {
      fail("s must lie in [0, element_z]");
    }
    if (!table.rows_.empty() && s < table.rows_.back().s) {
      fail("s values must be nondecreasing");
    }
    table.rows_.push_back({x, s});
  }
  if (table.rows_.empty()) {
    fail("table has no data rows");
  }
  return table;
}

ScatteringFunctionTable ScatteringFunctionTable::load_file(const std::string& path,
                                                           int element_z) {
  std::ifstream in(path);
  if (!in) {
    throw TableFormatError("cannot open scattering table '" + path + "'");
  }
  return load(in, element_z);
}

ScatteringFunctionTable ScatteringFunctionTable::free_electron(int element_z) {
  ScatteringFunctionTable table;
  table.element_z_ = element_z;
  table.rows_ = {{0.0, 1.0}};
  return table;
}

double ScatteringFunctionTable::evaluate_at_x(double x) const {
  const auto& r = rows_;
  if (x <= r.front().x) {
    return r.front().s;
  }
  if (x >= r.back().x) {
    return r.back().s;
  }
  const auto it = std::upper_bound(
      r.begin(), r.end(), x,
      [](double value, const ScatteringSample& row) { return value < row.x; });
  const auto& hi = *it;
  const auto& lo = *std::prev(it);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.s + t * (hi.s - lo.s);
}

double evaluate_s(const ScatteringFunctionTable& table, double theta, PhotonEnergy e_o) {
  const double x = std::sin(0.5 * theta) * mc2_to_kev(e_o) / kHcKevAngstrom;
  return table.evaluate_at_x(x);
}

double incoherent_ddxsec(BellState state, const JointKinematics& jk,
                         const ScatteringFunctionTable& table) {
  return ddxsec_kn(state, jk) * evaluate_s(table, jk.theta_i, jk.e_oi) *
         evaluate_s(table, jk.theta_s, jk.e_os);
}

double ia_precision(const PrecisionInput& input) {
  if (!(input.e_b.value >= 0.0)) {
    throw std::domain_error("binding energy must be nonnegative");
  }
  if (input.e_b.value == 0.0) {
    return 0.0;
  }
  const PhotonEnergy e_i = scattered_energy_bound(input.e_oi, input.e_b, input.theta_i);
  const PhotonEnergy e_s = scattered_energy_bound(input.e_os, input.e_b, input.theta_s);
  const double shift_i = input.e_oi.value - e_i.value;
  const double shift_s = input.e_os.value - e_s.value;
  const double eb2 = input.e_b.value * input.e_b.value;
  return std::hypot(eb2 / (shift_i * shift_i), eb2 / (shift_s * shift_s));
}

BandedValue xsec_with_band(BellState state, const JointKinematics& jk,
                           const ScatteringFunctionTable& table, BindingEnergy e_b) {
  const double central = incoherent_ddxsec(state, jk, table);
  const double precision =
      ia_precision({jk.e_oi, jk.e_os, jk.theta_i, jk.theta_s, e_b});
  return {central, 0.5 * central * precision};
}

}  // namespace bellxs
