#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbiem/oracles.hpp"
#include "sbiem/simulator.hpp"

namespace sbiem::io {

inline constexpr const char* kVersion = "0.1.0";

/// Parses a configuration document. Missing keys take the reference rupture
/// defaults (or the impulse defaults when scenario is "impulse"); unknown
/// keys are rejected. Throws ConfigError.
SimConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a configuration file. A missing or unreadable file is a
/// ConfigError naming the path.
SimConfig load_config(const std::filesystem::path& path);

/// Full configuration with every key present; parse_config(to_json(c))
/// reproduces c.
nlohmann::json to_json(const SimConfig& config);

/// FNV-1a hash of the canonical JSON form, as 16 hex digits.
std::string config_hash(const SimConfig& config);

/// Writes `# time_s=... step=... config_hash=...`, a column header
///   x1_m,slip_m,slip_rate_m_s,shear_stress_Pa
/// and one row per element in %.17e. Throws IoError.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot, const std::string& hash);
Snapshot read_snapshot(const std::filesystem::path& path);

/// `# position_m=... element=... config_hash=...`, header t_s,slip_rate_m_s.
void write_probe(const std::filesystem::path& path, const ProbeSeries& probe, const std::string& hash);
ProbeSeries read_probe(const std::filesystem::path& path);

struct Manifest {
  nlohmann::json config;
  std::string version = kVersion;
  std::string started;
  std::string finished;
  Counters counters;
  std::vector<std::string> warnings;
  std::vector<std::string> outputs;
  std::string status = "ok";
};

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

/// Writes snapshot_NNN.csv and probe_NN.csv (numbered from 1) and
/// manifest.json into `dir`.
/// Returns the written file names.
std::vector<std::string> write_run(const std::filesystem::path& dir, const SimConfig& config, const RunResult& result,
                                   const std::string& started, const std::string& status = "ok");

/// Two-column-plus table of a modal Volterra run against the analytic
/// response: gamma, r_numeric, r_analytic, r_closed_form, abs_dev, rel_dev.
struct ModalComparison {
  oracles::ModalRun run;
  std::vector<double> analytic;
  std::vector<double> closed_form;
  double max_rel_dev = 0.0;            // |r_num - r_ana| / max(1, r_ana)
  double max_closed_form_dev = 0.0;    // |r_closed - r_ana|
};

ModalComparison compare_modal(double dgamma, double gamma_max, int delay_steps);
void write_modal_table(const std::filesystem::path& path, const ModalComparison& cmp);

/// Current UTC time in ISO 8601.
std::string utc_now();

}  // namespace sbiem::io
