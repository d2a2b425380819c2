// Command-line driver: simulate, verify-modal, verify-impulse, verify-kernels.
//
// Exit codes: 0 success, 1 usage error, 2 configuration or I/O error,
// 3 numerical divergence.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbiem/errors.hpp"
#include "sbiem/io.hpp"
#include "sbiem/kernels.hpp"
#include "sbiem/oracles.hpp"
#include "sbiem/simulator.hpp"
#include "sbiem/specfun.hpp"
#include "sbiem/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_simulate(const fs::path& config_path, const fs::path& out_dir) {
  const auto config = sbiem::io::load_config(config_path);
  const auto started = sbiem::io::utc_now();
  try {
    const auto result = sbiem::run(config);
    print_warnings(result.warnings);
    const auto files = sbiem::io::write_run(out_dir, config, result, started);
    std::cout << "simulate: " << result.counters.steps << " steps, " << result.counters.multiply_adds
              << " kernel multiply-adds, " << result.counters.wall_seconds << " s; wrote " << files.size()
              << " files to " << out_dir.string() << '\n';
    return 0;
  } catch (const sbiem::RunDivergedError& e) {
    auto partial = e.partial();
    partial.snapshots.push_back(e.last_good());
    sbiem::io::write_run(out_dir, config, partial, started, std::string("diverged: ") + e.what());
    std::cerr << "error: " << e.what() << " (last good state saved)\n";
    return kExitDiverged;
  }
}

int cmd_verify_modal(double dgamma, double gamma_max, int delay_steps, const fs::path& out) {
  const auto cmp = sbiem::io::compare_modal(dgamma, gamma_max, delay_steps);
  sbiem::io::write_modal_table(out, cmp);
  std::cout << "verify-modal: dgamma=" << dgamma << " delay_steps=" << delay_steps
            << " max_rel_dev=" << cmp.max_rel_dev << " max_closed_form_dev=" << cmp.max_closed_form_dev << '\n';
  return 0;
}

int cmd_verify_impulse(const fs::path& config_path, const fs::path& out_dir) {
  auto config = sbiem::io::load_config(config_path);
  if (config.scenario != sbiem::Scenario::impulse) {
    throw sbiem::ConfigError("verify-impulse requires scenario \"impulse\"");
  }
  if (config.probe_positions.empty()) throw sbiem::ConfigError("verify-impulse requires one probe position");
  const auto report = sbiem::verify::impulse_comparison(config, config.probe_positions.front());

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw sbiem::IoError("cannot create " + out_dir.string());
  std::ofstream table(out_dir / "impulse_comparison.csv");
  if (!table) throw sbiem::IoError("cannot write " + (out_dir / "impulse_comparison.csv").string());
  table << "# position_m=" << report.position << " amplitude_constant=" << report.amplitude
        << " waveform_error=" << report.waveform_error << " peak_error=" << report.peak_error << '\n';
  table << "t_s,slip_numeric_m,slip_reference_m\n";
  char line[96];
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17e,%.17e,%.17e\n", report.times[i], report.slip[i], report.reference[i]);
    table << line;
  }
  json summary = {{"position_m", report.position},
                  {"amplitude_constant", report.amplitude},
                  {"amplitude_over_magnitude", report.amplitude / config.impulse_magnitude},
                  {"waveform_error", report.waveform_error},
                  {"peak_error", report.peak_error},
                  {"window_t_over_arrival", {1.5, 4.0}},
                  {"config", sbiem::io::to_json(config)}};
  std::ofstream(out_dir / "impulse_summary.json") << summary.dump(2) << '\n';
  std::cout << "verify-impulse: amplitude constant " << report.amplitude << ", waveform error "
            << report.waveform_error << " (L2), " << report.peak_error << " (peak)\n";
  return 0;
}

int cmd_verify_kernels(const fs::path& out) {
  const auto report = sbiem::verify::kernel_checks();
  std::ofstream file(out);
  if (!file) throw sbiem::IoError("cannot write " + out.string());
  file << report.dump(2) << '\n';
  std::cout << "verify-kernels: laplace max deviation " << report["laplace_max_deviation"].get<double>()
            << ", bimaterial reduction max deviation " << report["reduction_max_deviation"].get<double>() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral boundary integral simulator for antiplane interface slip"};
  app.require_subcommand(1);

  fs::path config_path;
  fs::path out_path;
  auto* simulate = app.add_subcommand("simulate", "Run a rupture or impulse scenario");
  simulate->add_option("--config", config_path, "Configuration file (JSON)")->required();
  simulate->add_option("--out", out_path, "Output directory")->required();

  double dgamma = 0.1;
  double gamma_max = 30.0;
  int delay_steps = 0;
  auto* modal = app.add_subcommand("verify-modal", "Compare the modal Volterra solution with the analytic response");
  modal->add_option("--dgamma", dgamma, "Nondimensional step |k| cs dt")->required();
  modal->add_option("--gamma-max", gamma_max, "Final nondimensional time")->required();
  modal->add_option("--delay-steps", delay_steps, "Convolution delay in steps")->check(CLI::NonNegativeNumber);
  modal->add_option("--out", out_path, "Output table")->default_val("modal.csv");

  auto* impulse = app.add_subcommand("verify-impulse", "Impulse run against the analytic slip");
  impulse->add_option("--config", config_path, "Configuration file (JSON)")->required();
  impulse->add_option("--out", out_path, "Output directory")->required();

  auto* kernels = app.add_subcommand("verify-kernels", "Laplace-identity and bimaterial-reduction checks");
  kernels->add_option("--out", out_path, "Output report (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_path);
    if (*modal) return cmd_verify_modal(dgamma, gamma_max, delay_steps, out_path);
    if (*impulse) return cmd_verify_impulse(config_path, out_path);
    if (*kernels) return cmd_verify_kernels(out_path);
  } catch (const sbiem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sbiem::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sbiem::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const sbiem::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const sbiem::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitUsage;
}
