#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bellxs/scan.hpp"

namespace {

using bellxs::OutputFormat;
using bellxs::PeakOutcome;
using bellxs::RunConfig;
using bellxs::ScanTable;

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> state;
  std::optional<double> e_oi_kev;
  std::optional<double> e_os_kev;
  std::optional<double> e_b_kev;
  std::optional<int> element_z;
  std::optional<std::string> s_table;
  std::optional<std::string> arrangement;
  std::optional<double> delta_theta_is_deg;
  std::optional<double> theta_min_deg;
  std::optional<double> theta_max_deg;
  std::optional<double> theta_step_deg;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config,
                  "JSON config file; explicit flags override its values");
  cmd->add_option("--state", flags.state,
                  "Bell state: psi_plus, psi_minus, phi_plus, phi_minus");
  cmd->add_option("--e-oi-kev", flags.e_oi_kev, "Incident idler energy in keV");
  cmd->add_option("--e-os-kev", flags.e_os_kev, "Incident signal energy in keV");
  cmd->add_option("--e-b-kev", flags.e_b_kev, "Electron binding energy in keV");
  cmd->add_option("--element-z", flags.element_z, "Atomic number of the target");
  cmd->add_option("--s-table", flags.s_table,
                  "CSV file with the incoherent scattering function (default: free electron)");
  cmd->add_option("--arrangement", flags.arrangement, "Detector arrangement: energy or phase");
  cmd->add_option("--delta-theta-is-deg", flags.delta_theta_is_deg,
                  "Beam opening angle in degrees, [0, 90]");
  cmd->add_option("--theta-min-deg", flags.theta_min_deg, "Scan start angle in degrees");
  cmd->add_option("--theta-max-deg", flags.theta_max_deg, "Scan end angle in degrees");
  cmd->add_option("--theta-step-deg", flags.theta_step_deg, "Scan step in degrees");
  cmd->add_option("--format", flags.format, "Output format: csv or json");
  cmd->add_option("--out", flags.out, "Output file path, or - for stdout");
}

RunConfig build_config(const CommonFlags& flags) {
  RunConfig cfg;
  if (flags.config) {
    cfg = RunConfig::from_json_file(*flags.config);
  }
  if (flags.state) cfg.state = bellxs::bell_state_from_string(*flags.state);
  if (flags.e_oi_kev) cfg.e_oi_kev = *flags.e_oi_kev;
  if (flags.e_os_kev) cfg.e_os_kev = *flags.e_os_kev;
  if (flags.e_b_kev) cfg.e_b_kev = *flags.e_b_kev;
  if (flags.element_z) cfg.element_z = *flags.element_z;
  if (flags.s_table) cfg.scattering_table_path = *flags.s_table;
  if (flags.arrangement) cfg.arrangement = bellxs::arrangement_from_string(*flags.arrangement);
  if (flags.delta_theta_is_deg) cfg.delta_theta_is_deg = *flags.delta_theta_is_deg;
  if (flags.theta_min_deg) cfg.theta_min_deg = *flags.theta_min_deg;
  if (flags.theta_max_deg) cfg.theta_max_deg = *flags.theta_max_deg;
  if (flags.theta_step_deg) cfg.theta_step_deg = *flags.theta_step_deg;
  if (flags.format) cfg.output_format = bellxs::output_format_from_string(*flags.format);
  if (flags.out) cfg.output_path = *flags.out;
  return cfg;
}

template <typename WriteFn>
void emit(const RunConfig& cfg, WriteFn&& write) {
  if (cfg.output_path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(cfg.output_path, std::ios::binary);
  if (!os) {
    throw bellxs::ConfigError("output_path: cannot open '" + cfg.output_path + "'");
  }
  write(os);
}

void emit_table(const ScanTable& table, const RunConfig& cfg) {
  emit(cfg, [&](std::ostream& os) {
    if (cfg.output_format == OutputFormat::Csv) {
      bellxs::write_table_csv(table, os);
    } else {
      bellxs::write_table_json(table, os);
    }
  });
}

void emit_peak(const PeakOutcome& peak, const RunConfig& cfg) {
  emit(cfg, [&](std::ostream& os) {
    if (cfg.output_format == OutputFormat::Csv) {
      bellxs::write_peak_csv(peak, os);
    } else {
      bellxs::write_peak_json(peak, os);
    }
  });
}

std::string single_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Polarization-correlated Compton scattering observables for Bell photon pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bellxs 0.1.0");

  CommonFlags flags;
  CLI::App* xsec = app.add_subcommand(
      "xsec-scan", "Cross sections at the two azimuth settings over a theta grid");
  CLI::App* ratio =
      app.add_subcommand("ratio-scan", "Azimuthal cross-section ratio over a theta grid");
  CLI::App* peak = app.add_subcommand(
      "peak", "Locate the maximum of the azimuthal ratio within a theta range");
  add_common_flags(xsec, flags);
  add_common_flags(ratio, flags);
  add_common_flags(peak, flags);

  CLI::App* figure =
      app.add_subcommand("figure", "Write a named preset dataset (CSV plus JSON sidecar)");
  std::string figure_name;
  std::string figure_out = ".";
  figure->add_option("name", figure_name, "Preset name: fig3a, fig3b, fig4a, fig4b, fig6")
      ->required();
  figure->add_option("--out", figure_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << "error: cli: " << single_line(e.what()) << "\n";
    return 2;
  }

  try {
    if (figure->parsed()) {
      for (const auto& path : bellxs::run_figure(figure_name, figure_out)) {
        std::cout << path.string() << "\n";
      }
      return 0;
    }
    const RunConfig cfg = build_config(flags);
    if (xsec->parsed()) {
      emit_table(bellxs::run_xsec_scan(cfg), cfg);
    } else if (ratio->parsed()) {
      emit_table(bellxs::run_ratio_scan(cfg), cfg);
    } else if (peak->parsed()) {
      emit_peak(bellxs::run_peak(cfg), cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << single_line(e.what()) << "\n";
    return 1;
  }
  return 0;
}
