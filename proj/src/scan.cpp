#include "bellxs/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bellxs/angles.hpp"
#include "bellxs/incoherent.hpp"
#include "bellxs/ratios.hpp"

namespace bellxs {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kRefineStepDeg = 0.001;

std::vector<double> theta_grid_deg(const RunConfig& cfg) {
  const auto n = static_cast<long>(
      std::floor((cfg.theta_max_deg - cfg.theta_min_deg) / cfg.theta_step_deg + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long j = 0; j <= n; ++j) {
    grid.push_back(cfg.theta_min_deg + static_cast<double>(j) * cfg.theta_step_deg);
  }
  return grid;
}

ScatteringFunctionTable load_table_for(const RunConfig& cfg) {
  if (cfg.scattering_table_path.empty()) {
    return ScatteringFunctionTable::free_electron(cfg.element_z);
  }
  try {
    return ScatteringFunctionTable::load_file(cfg.scattering_table_path, cfg.element_z);
  } catch (const TableFormatError& e) {
    throw ConfigError(std::string("scattering_table_path: ") + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> base_metadata(const RunConfig& cfg) {
  return {
      {"state", to_string(cfg.state)},
      {"e_oi_kev", format_number(cfg.e_oi_kev)},
      {"e_os_kev", format_number(cfg.e_os_kev)},
      {"e_b_kev", format_number(cfg.e_b_kev)},
      {"element_z", std::to_string(cfg.element_z)},
      {"scattering_table",
       cfg.scattering_table_path.empty() ? "free-electron" : cfg.scattering_table_path},
      {"arrangement", to_string(cfg.arrangement)},
      {"delta_theta_is_deg", format_number(cfg.delta_theta_is_deg)},
  };
}

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_number(double value) {
  if (!std::isfinite(value)) {
    return "null";
  }
  return format_number(value);
}

void ensure(bool ok, const char* message) {
  if (!ok) {
    throw ConfigError(message);
  }
}

double require_number(const json& j, const char* key) {
  if (!j.is_number()) {
    throw ConfigError(std::string(key) + ": expected a number");
  }
  return j.get<double>();
}

std::string require_string(const json& j, const char* key) {
  if (!j.is_string()) {
    throw ConfigError(std::string(key) + ": expected a string");
  }
  return j.get<std::string>();
}

}  // namespace

std::string to_string(BellState state) {
  switch (state) {
    case BellState::PsiPlus: return "psi_plus";
    case BellState::PsiMinus: return "psi_minus";
    case BellState::PhiPlus: return "phi_plus";
    case BellState::PhiMinus: return "phi_minus";
  }
  return "psi_plus";
}

std::string to_string(ArrangementKind kind) {
  return kind == ArrangementKind::EnergyParam ? "energy" : "phase";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

BellState bell_state_from_string(const std::string& text) {
  if (text == "psi_plus") return BellState::PsiPlus;
  if (text == "psi_minus") return BellState::PsiMinus;
  if (text == "phi_plus") return BellState::PhiPlus;
  if (text == "phi_minus") return BellState::PhiMinus;
  throw ConfigError("state: unknown value '" + text +
                    "' (valid: psi_plus, psi_minus, phi_plus, phi_minus)");
}

ArrangementKind arrangement_from_string(const std::string& text) {
  if (text == "energy") return ArrangementKind::EnergyParam;
  if (text == "phase") return ArrangementKind::PhaseParam;
  throw ConfigError("arrangement: unknown value '" + text + "' (valid: energy, phase)");
}

OutputFormat output_format_from_string(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("output_format: unknown value '" + text + "' (valid: csv, json)");
}

void RunConfig::validate() const {
  ensure(e_oi_kev > 0.0, "e_oi_kev: must be positive");
  ensure(e_os_kev > 0.0, "e_os_kev: must be positive");
  ensure(e_b_kev >= 0.0, "e_b_kev: must be nonnegative");
  ensure(e_b_kev < e_oi_kev && e_b_kev < e_os_kev,
         "e_b_kev: must be below both incident energies");
  ensure(element_z >= 1, "element_z: must be a positive integer");
  ensure(delta_theta_is_deg >= 0.0 && delta_theta_is_deg <= 90.0,
         "delta_theta_is_deg: must lie in [0, 90]");
  ensure(theta_min_deg >= 0.0 && theta_min_deg <= 180.0,
         "theta_min_deg: must lie in [0, 180]");
  ensure(theta_max_deg >= 0.0 && theta_max_deg <= 180.0,
         "theta_max_deg: must lie in [0, 180]");
  ensure(theta_min_deg < theta_max_deg, "theta_min_deg: must be below theta_max_deg");
  ensure(theta_step_deg > 0.0, "theta_step_deg: must be positive");
  ensure(!output_path.empty(), "output_path: must be nonempty");
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!parsed.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  RunConfig cfg;
  for (const auto& [key, value] : parsed.items()) {
    if (key == "state") {
      cfg.state = bell_state_from_string(require_string(value, "state"));
    } else if (key == "e_oi_kev") {
      cfg.e_oi_kev = require_number(value, "e_oi_kev");
    } else if (key == "e_os_kev") {
      cfg.e_os_kev = require_number(value, "e_os_kev");
    } else if (key == "e_b_kev") {
      cfg.e_b_kev = require_number(value, "e_b_kev");
    } else if (key == "element_z") {
      if (!value.is_number_integer()) {
        throw ConfigError("element_z: expected an integer");
      }
      cfg.element_z = value.get<int>();
    } else if (key == "scattering_table_path") {
      cfg.scattering_table_path = require_string(value, "scattering_table_path");
    } else if (key == "arrangement") {
      cfg.arrangement = arrangement_from_string(require_string(value, "arrangement"));
    } else if (key == "delta_theta_is_deg") {
      cfg.delta_theta_is_deg = require_number(value, "delta_theta_is_deg");
    } else if (key == "theta_min_deg") {
      cfg.theta_min_deg = require_number(value, "theta_min_deg");
    } else if (key == "theta_max_deg") {
      cfg.theta_max_deg = require_number(value, "theta_max_deg");
    } else if (key == "theta_step_deg") {
      cfg.theta_step_deg = require_number(value, "theta_step_deg");
    } else if (key == "output_format") {
      cfg.output_format = output_format_from_string(require_string(value, "output_format"));
    } else if (key == "output_path") {
      cfg.output_path = require_string(value, "output_path");
    } else {
      throw ConfigError("config: unknown field '" + key + "'");
    }
  }
  return cfg;
}

RunConfig RunConfig::from_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string RunConfig::to_json_text() const {
  json j;
  j["state"] = to_string(state);
  j["e_oi_kev"] = e_oi_kev;
  j["e_os_kev"] = e_os_kev;
  j["e_b_kev"] = e_b_kev;
  j["element_z"] = element_z;
  j["scattering_table_path"] = scattering_table_path;
  j["arrangement"] = to_string(arrangement);
  j["delta_theta_is_deg"] = delta_theta_is_deg;
  j["theta_min_deg"] = theta_min_deg;
  j["theta_max_deg"] = theta_max_deg;
  j["theta_step_deg"] = theta_step_deg;
  j["output_format"] = to_string(output_format);
  j["output_path"] = output_path;
  return j.dump(2) + "\n";
}

ScanTable run_xsec_scan(const RunConfig& cfg) {
  cfg.validate();
  const ScatteringFunctionTable table = load_table_for(cfg);
  const PhaseMatching pm{deg_to_rad(cfg.delta_theta_is_deg)};
  const AzimuthPair eta = arrangement_azimuths(cfg.arrangement, pm);
  const PhotonEnergy e_oi = kev_to_mc2(cfg.e_oi_kev);
  const PhotonEnergy e_os = kev_to_mc2(cfg.e_os_kev);
  const BindingEnergy e_b{kev_to_mc2(cfg.e_b_kev).value};

  ScanTable out;
  out.command = "xsec-scan";
  out.metadata = base_metadata(cfg);
  out.metadata.emplace_back("eta_max_deg", format_number(rad_to_deg(eta.eta_max)));
  out.metadata.emplace_back("eta_min_deg", format_number(rad_to_deg(eta.eta_min)));
  out.columns = {"theta_deg", "xsec_eta_max", "xsec_eta_min", "half_width_max",
                 "half_width_min"};
  for (const double theta_deg : theta_grid_deg(cfg)) {
    const double theta = deg_to_rad(theta_deg);
    JointKinematics jk{theta, theta, eta.eta_max, e_oi, e_os};
    const BandedValue at_max = xsec_with_band(cfg.state, jk, table, e_b);
    jk.eta = eta.eta_min;
    const BandedValue at_min = xsec_with_band(cfg.state, jk, table, e_b);
    out.rows.push_back(
        {theta_deg, at_max.central, at_min.central, at_max.half_width, at_min.half_width});
  }
  return out;
}

ScanTable run_ratio_scan(const RunConfig& cfg) {
  cfg.validate();
  // ratios are independent of S, but a configured table must still parse
  (void)load_table_for(cfg);
  const StateFamily family = family_of(cfg.state);
  const PhaseMatching pm{deg_to_rad(cfg.delta_theta_is_deg)};
  const PhotonEnergy e_oi = kev_to_mc2(cfg.e_oi_kev);
  const PhotonEnergy e_os = kev_to_mc2(cfg.e_os_kev);
  const BindingEnergy e_b{kev_to_mc2(cfg.e_b_kev).value};
  const bool phase = cfg.arrangement == ArrangementKind::PhaseParam;

  ScanTable out;
  out.command = "ratio-scan";
  out.metadata = base_metadata(cfg);
  out.columns = {"theta_deg", "ratio", "half_width"};
  for (const double theta_deg : theta_grid_deg(cfg)) {
    const double theta = deg_to_rad(theta_deg);
    const RatioResult r = phase ? rho_with_band(theta, e_oi, e_os, pm, family, e_b)
                                : ratio_with_band(theta, e_oi, e_os, family, e_b);
    out.rows.push_back({theta_deg, r.value, r.half_width});
  }
  return out;
}

PeakOutcome run_peak(const RunConfig& cfg) {
  cfg.validate();
  (void)load_table_for(cfg);
  const StateFamily family = family_of(cfg.state);
  const PhaseMatching pm{deg_to_rad(cfg.delta_theta_is_deg)};
  const PhotonEnergy e_oi = kev_to_mc2(cfg.e_oi_kev);
  const PhotonEnergy e_os = kev_to_mc2(cfg.e_os_kev);
  const BindingEnergy e_b{kev_to_mc2(cfg.e_b_kev).value};
  const bool phase = cfg.arrangement == ArrangementKind::PhaseParam;

  const auto fn = [&](double theta) {
    return phase ? rho_nd(theta, e_oi, e_os, pm, family)
                 : ratio_nd(theta, e_oi, e_os, family);
  };
  const PeakReport report =
      peak_scan(fn, deg_to_rad(cfg.theta_min_deg), deg_to_rad(cfg.theta_max_deg),
                deg_to_rad(cfg.theta_step_deg), deg_to_rad(kRefineStepDeg));
  const RatioResult band =
      phase ? rho_with_band(report.theta_star, e_oi, e_os, pm, family, e_b)
            : ratio_with_band(report.theta_star, e_oi, e_os, family, e_b);
  return {rad_to_deg(report.theta_star), report.value_star, band.half_width,
          kRefineStepDeg};
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig3a", "fig3b", "fig4a", "fig4b", "fig6"};
  return names;
}

namespace {

RunConfig figure_config(BellState state, double e_oi_kev, double e_os_kev,
                        ArrangementKind arrangement, double delta_deg, bool ratio,
                        const std::string& csv_name) {
  RunConfig cfg;
  cfg.state = state;
  cfg.e_oi_kev = e_oi_kev;
  cfg.e_os_kev = e_os_kev;
  cfg.e_b_kev = 0.0547;
  cfg.element_z = 2;
  cfg.arrangement = arrangement;
  cfg.delta_theta_is_deg = delta_deg;
  cfg.theta_min_deg = 1.0;
  cfg.theta_max_deg = 179.0;
  cfg.theta_step_deg = ratio ? 0.01 : 0.1;
  cfg.output_format = OutputFormat::Csv;
  cfg.output_path = csv_name;
  return cfg;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw ConfigError("output_path: cannot open '" + path.string() + "'");
  }
  os << contents;
}

fs::path sidecar_path(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

void emit_preset(const RunConfig& cfg, bool ratio, const fs::path& out_dir,
                 std::vector<fs::path>& written) {
  const ScanTable table = ratio ? run_ratio_scan(cfg) : run_xsec_scan(cfg);
  const fs::path csv_path = out_dir / cfg.output_path;
  std::ostringstream csv;
  write_table_csv(table, csv);
  write_file(csv_path, csv.str());
  write_file(sidecar_path(csv_path), cfg.to_json_text());
  written.push_back(csv_path);
  written.push_back(sidecar_path(csv_path));
}

void emit_merged_ratio_pair(const RunConfig& first, const RunConfig& second,
                            const std::string& csv_name, const fs::path& out_dir,
                            std::vector<fs::path>& written) {
  const ScanTable a = run_ratio_scan(first);
  const ScanTable b = run_ratio_scan(second);
  const std::string label_a = format_number(first.delta_theta_is_deg);
  const std::string label_b = format_number(second.delta_theta_is_deg);

  ScanTable merged;
  merged.command = "ratio-scan";
  merged.metadata = base_metadata(first);
  for (auto& [key, value] : merged.metadata) {
    if (key == "delta_theta_is_deg") {
      value = label_a + ", " + label_b;
    }
  }
  merged.columns = {"theta_deg", "ratio_" + label_a, "half_width_" + label_a,
                    "ratio_" + label_b, "half_width_" + label_b};
  merged.rows.reserve(a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    merged.rows.push_back(
        {a.rows[i][0], a.rows[i][1], a.rows[i][2], b.rows[i][1], b.rows[i][2]});
  }

  const fs::path csv_path = out_dir / csv_name;
  std::ostringstream csv;
  write_table_csv(merged, csv);
  write_file(csv_path, csv.str());

  const json runs = {json::parse(first.to_json_text()), json::parse(second.to_json_text())};
  write_file(sidecar_path(csv_path), json{{"runs", runs}}.dump(2) + "\n");
  written.push_back(csv_path);
  written.push_back(sidecar_path(csv_path));
}

}  // namespace

std::vector<fs::path> run_figure(const std::string& name, const fs::path& out_dir) {
  const auto& names = figure_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string valid;
    for (const auto& n : names) {
      valid += valid.empty() ? n : ", " + n;
    }
    throw ConfigError("figure: unknown name '" + name + "' (valid: " + valid + ")");
  }
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  const auto energy = ArrangementKind::EnergyParam;
  const auto phase = ArrangementKind::PhaseParam;
  if (name == "fig3a") {
    emit_preset(figure_config(BellState::PsiPlus, 12.5, 12.5, energy, 0.0, false, "fig3a.csv"),
                false, out_dir, written);
  } else if (name == "fig3b") {
    emit_preset(figure_config(BellState::PsiPlus, 10.0, 15.0, energy, 0.0, false, "fig3b.csv"),
                false, out_dir, written);
  } else if (name == "fig4a") {
    emit_preset(figure_config(BellState::PsiPlus, 12.5, 12.5, energy, 0.0, true, "fig4a.csv"),
                true, out_dir, written);
  } else if (name == "fig4b") {
    emit_preset(
        figure_config(BellState::PsiPlus, 10.0, 15.0, energy, 0.0, true, "fig4b_psi.csv"),
        true, out_dir, written);
    emit_preset(
        figure_config(BellState::PhiPlus, 10.0, 15.0, energy, 0.0, true, "fig4b_phi.csv"),
        true, out_dir, written);
  } else {
    emit_merged_ratio_pair(
        figure_config(BellState::PhiPlus, 10.0, 15.0, phase, 78.38, true, "fig6a.csv"),
        figure_config(BellState::PhiPlus, 10.0, 15.0, phase, 81.53, true, "fig6a.csv"),
        "fig6a.csv", out_dir, written);
    emit_preset(
        figure_config(BellState::PsiPlus, 10.0, 15.0, phase, 78.38, false, "fig6b.csv"),
        false, out_dir, written);
    emit_preset(
        figure_config(BellState::PsiPlus, 10.0, 15.0, phase, 81.53, false, "fig6c.csv"),
        false, out_dir, written);
  }
  return written;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_table_csv(const ScanTable& table, std::ostream& os) {
  os << "# command: " << table.command << "\n";
  for (const auto& [key, value] : table.metadata) {
    os << "# " << key << ": " << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c == 0 ? "" : ",") << table.columns[c];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c == 0 ? "" : ",") << format_number(row[c]);
    }
    os << "\n";
  }
}

void write_table_json(const ScanTable& table, std::ostream& os) {
  os << "{\n";
  os << "  \"command\": \"" << json_escape(table.command) << "\",\n";
  os << "  \"metadata\": {";
  for (std::size_t i = 0; i < table.metadata.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n") << "    \"" << json_escape(table.metadata[i].first)
       << "\": \"" << json_escape(table.metadata[i].second) << "\"";
  }
  os << "\n  },\n";
  os << "  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c == 0 ? "" : ", ") << "\"" << json_escape(table.columns[c]) << "\"";
  }
  os << "],\n";
  os << "  \"rows\": [\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      os << (c == 0 ? "" : ", ") << json_number(table.rows[r][c]);
    }
    os << (r + 1 == table.rows.size() ? "]\n" : "],\n");
  }
  os << "  ]\n}\n";
}

void write_peak_csv(const PeakOutcome& peak, std::ostream& os) {
  os << "theta_star_deg,value,half_width,grid_step_deg\n";
  os << format_number(peak.theta_star_deg) << "," << format_number(peak.value) << ","
     << format_number(peak.half_width) << "," << format_number(peak.grid_step_deg) << "\n";
}

void write_peak_json(const PeakOutcome& peak, std::ostream& os) {
  os << "{\n";
  os << "  \"theta_star_deg\": " << json_number(peak.theta_star_deg) << ",\n";
  os << "  \"value\": " << json_number(peak.value) << ",\n";
  os << "  \"half_width\": " << json_number(peak.half_width) << ",\n";
  os << "  \"grid_step_deg\": " << json_number(peak.grid_step_deg) << "\n";
  os << "}\n";
}

}  // namespace bellxs
