#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellxs/bell_xsec.hpp"
#include "bellxs/geometry.hpp"

namespace bellxs {

/// Raised for invalid run configurations; the message starts with the
/// offending field name.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string to_string(BellState state);
[[nodiscard]] std::string to_string(ArrangementKind kind);
[[nodiscard]] std::string to_string(OutputFormat format);
[[nodiscard]] BellState bell_state_from_string(const std::string& text);
[[nodiscard]] ArrangementKind arrangement_from_string(const std::string& text);
[[nodiscard]] OutputFormat output_format_from_string(const std::string& text);

/// One scan or peak-search run. Energies and angles are in the CLI units
/// (keV, degrees); conversion to internal units happens inside the run
/// functions. Serializes to a flat JSON object with these exact field
/// names.
struct RunConfig {
  BellState state = BellState::PsiPlus;
  double e_oi_kev = 12.5;
  double e_os_kev = 12.5;
  double e_b_kev = 0.0;
  int element_z = 1;
  std::string scattering_table_path;
  ArrangementKind arrangement = ArrangementKind::EnergyParam;
  double delta_theta_is_deg = 0.0;
  double theta_min_deg = 1.0;
  double theta_max_deg = 179.0;
  double theta_step_deg = 0.1;
  OutputFormat output_format = OutputFormat::Csv;
  std::string output_path = "-";

  void validate() const;

  [[nodiscard]] static RunConfig from_json_text(const std::string& text);
  [[nodiscard]] static RunConfig from_json_file(const std::filesystem::path& path);
  [[nodiscard]] std::string to_json_text() const;
};

/// Column-oriented scan result plus the metadata that reproduces it.
struct ScanTable {
  std::string command;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct PeakOutcome {
  double theta_star_deg{};
  double value{};
  double half_width{};
  double grid_step_deg{};
};

/// Cross sections at the arrangement's two azimuth settings over the theta
/// grid. Columns: theta_deg, xsec_eta_max, xsec_eta_min, half_width_max,
/// half_width_min.
[[nodiscard]] ScanTable run_xsec_scan(const RunConfig& cfg);

/// Azimuthal ratio over the theta grid. Columns: theta_deg, ratio,
/// half_width. EnergyParam runs use ratio_nd, PhaseParam runs use rho_nd.
[[nodiscard]] ScanTable run_ratio_scan(const RunConfig& cfg);

/// Peak search over [theta_min_deg, theta_max_deg] with coarse step
/// theta_step_deg and a fixed 0.001 deg refinement.
[[nodiscard]] PeakOutcome run_peak(const RunConfig& cfg);

/// Writes one of the named figure outputs (fig3a, fig3b, fig4a, fig4b,
/// fig6) into out_dir: CSV data plus a JSON sidecar per CSV holding the
/// exact RunConfig that regenerates it. Returns the written paths.
[[nodiscard]] std::vector<std::filesystem::path> run_figure(
    const std::string& name, const std::filesystem::path& out_dir);

[[nodiscard]] const std::vector<std::string>& figure_names();

/// Shortest-form %.9g rendering used for every number in scan outputs.
[[nodiscard]] std::string format_number(double value);

void write_table_csv(const ScanTable& table, std::ostream& os);
void write_table_json(const ScanTable& table, std::ostream& os);
void write_peak_csv(const PeakOutcome& peak, std::ostream& os);
void write_peak_json(const PeakOutcome& peak, std::ostream& os);

}  // namespace bellxs
