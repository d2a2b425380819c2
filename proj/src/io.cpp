#include "sbiem/io.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "sbiem/errors.hpp"

namespace sbiem::io {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

const json& section(const json& doc, const char* name) {
  static const json empty = json::object();
  return doc.contains(name) ? doc.at(name) : empty;
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::string kernel_choice_name(KernelChoice c) {
  switch (c) {
    case KernelChoice::identical: return "identical";
    case KernelChoice::bimaterial: return "bimaterial";
    case KernelChoice::automatic: break;
  }
  return "auto";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw IoError(path.string() + ": malformed number '" + s + "'");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

// "# a=1 b=2" -> value of key.
std::string header_value(const std::string& line, const std::string& key, const std::filesystem::path& path) {
  std::istringstream ss(line.substr(1));
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos && token.substr(0, eq) == key) return token.substr(eq + 1);
  }
  throw IoError(path.string() + ": header lacks " + key);
}

std::vector<std::vector<double>> read_rows(std::istream& in, std::size_t columns, const std::filesystem::path& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, path));
    if (row.size() != columns) throw IoError(path.string() + ": expected " + std::to_string(columns) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SimConfig parse_config(const json& doc) {
  reject_unknown(doc, "config", {"scenario", "grid", "materials", "loading", "friction", "time", "convolution", "probes"});
  const std::string scenario = get_or<std::string>(doc, "scenario", "rupture", "config");
  SimConfig cfg;
  if (scenario == "impulse") {
    cfg = SimConfig::impulse_default();
  } else if (scenario != "rupture") {
    throw ConfigError("config.scenario: expected 'rupture' or 'impulse', got '" + scenario + "'");
  }

  const json& grid = section(doc, "grid");
  reject_unknown(grid, "grid", {"length_m", "elements", "barrier_length_m", "nucleation_length_m"});
  cfg.length = get_or(grid, "length_m", cfg.length, "grid");
  cfg.elements = get_or(grid, "elements", cfg.elements, "grid");
  cfg.barrier_length = get_or(grid, "barrier_length_m", cfg.barrier_length, "grid");
  cfg.nucleation_length = get_or(grid, "nucleation_length_m", cfg.nucleation_length, "grid");

  const json& mats = section(doc, "materials");
  reject_unknown(mats, "materials", {"top", "bottom", "kernel"});
  const json& top = section(mats, "top");
  reject_unknown(top, "materials.top", {"density_kg_m3", "shear_wave_speed_m_s"});
  const Material top_mat = Material::from_density_speed(
      get_or(top, "density_kg_m3", cfg.materials.top.rho, "materials.top"),
      get_or(top, "shear_wave_speed_m_s", cfg.materials.top.cs, "materials.top"));
  cfg.materials = MaterialPair::identical(top_mat);
  if (mats.contains("bottom")) {
    const json& bottom = mats.at("bottom");
    reject_unknown(bottom, "materials.bottom", {"density_kg_m3", "shear_wave_speed_m_s", "speed_ratio", "modulus_ratio"});
    const bool by_ratio = bottom.contains("speed_ratio") || bottom.contains("modulus_ratio");
    const bool by_value = bottom.contains("density_kg_m3") || bottom.contains("shear_wave_speed_m_s");
    if (by_ratio && by_value) throw ConfigError("materials.bottom: give either ratios or absolute values, not both");
    if (by_ratio) {
      cfg.materials = MaterialPair::from_ratios(top_mat, get_or(bottom, "speed_ratio", 1.0, "materials.bottom"),
                                                get_or(bottom, "modulus_ratio", 1.0, "materials.bottom"));
    } else {
      cfg.materials.bottom = Material::from_density_speed(
          get_or(bottom, "density_kg_m3", top_mat.rho, "materials.bottom"),
          get_or(bottom, "shear_wave_speed_m_s", top_mat.cs, "materials.bottom"));
    }
  }
  const std::string kernel = get_or<std::string>(mats, "kernel", "auto", "materials");
  if (kernel == "auto") {
    cfg.kernel_choice = KernelChoice::automatic;
  } else if (kernel == "identical") {
    cfg.kernel_choice = KernelChoice::identical;
  } else if (kernel == "bimaterial") {
    cfg.kernel_choice = KernelChoice::bimaterial;
  } else {
    throw ConfigError("materials.kernel: expected auto, identical or bimaterial");
  }

  const json& loading = section(doc, "loading");
  reject_unknown(loading, "loading", {"background_stress_pa", "nucleation_stress_pa", "impulse_magnitude_n_s_per_m"});
  cfg.tau_bg = get_or(loading, "background_stress_pa", cfg.tau_bg, "loading");
  cfg.tau_nuc = get_or(loading, "nucleation_stress_pa", cfg.tau_nuc, "loading");
  cfg.impulse_magnitude = get_or(loading, "impulse_magnitude_n_s_per_m", cfg.impulse_magnitude, "loading");

  const json& friction = section(doc, "friction");
  reject_unknown(friction, "friction", {"peak_strength_pa", "residual_strength_pa", "critical_slip_m", "barrier_strength_pa"});
  cfg.law.tau_s = get_or(friction, "peak_strength_pa", cfg.law.tau_s, "friction");
  cfg.law.tau_r = get_or(friction, "residual_strength_pa", cfg.law.tau_r, "friction");
  cfg.law.delta_c = get_or(friction, "critical_slip_m", cfg.law.delta_c, "friction");
  cfg.tau_barrier = get_or(friction, "barrier_strength_pa", cfg.tau_barrier, "friction");

  const json& time = section(doc, "time");
  reject_unknown(time, "time", {"beta", "total_time_s", "snapshot_times_s"});
  cfg.beta = get_or(time, "beta", cfg.beta, "time");
  cfg.total_time = get_or(time, "total_time_s", cfg.total_time, "time");
  cfg.snapshot_times = get_or(time, "snapshot_times_s", cfg.snapshot_times, "time");

  const json& conv = section(doc, "convolution");
  reject_unknown(conv, "convolution", {"delay_steps", "truncation_gamma"});
  cfg.kernel.delay_steps = get_or(conv, "delay_steps", cfg.kernel.delay_steps, "convolution");
  cfg.kernel.truncation_gamma = get_or(conv, "truncation_gamma", cfg.kernel.truncation_gamma, "convolution");

  const json& probes = section(doc, "probes");
  reject_unknown(probes, "probes", {"positions_m"});
  cfg.probe_positions = get_or(probes, "positions_m", cfg.probe_positions, "probes");

  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const SimConfig& c) {
  json doc;
  doc["scenario"] = c.scenario == Scenario::rupture ? "rupture" : "impulse";
  doc["grid"] = {{"length_m", c.length},
                 {"elements", c.elements},
                 {"barrier_length_m", c.barrier_length},
                 {"nucleation_length_m", c.nucleation_length}};
  doc["materials"] = {
      {"top", {{"density_kg_m3", c.materials.top.rho}, {"shear_wave_speed_m_s", c.materials.top.cs}}},
      {"bottom", {{"density_kg_m3", c.materials.bottom.rho}, {"shear_wave_speed_m_s", c.materials.bottom.cs}}},
      {"kernel", kernel_choice_name(c.kernel_choice)}};
  doc["loading"] = {{"background_stress_pa", c.tau_bg},
                    {"nucleation_stress_pa", c.tau_nuc},
                    {"impulse_magnitude_n_s_per_m", c.impulse_magnitude}};
  doc["friction"] = {{"peak_strength_pa", c.law.tau_s},
                     {"residual_strength_pa", c.law.tau_r},
                     {"critical_slip_m", c.law.delta_c},
                     {"barrier_strength_pa", number_or_null(c.tau_barrier)}};
  doc["time"] = {{"beta", c.beta}, {"total_time_s", c.total_time}, {"snapshot_times_s", c.snapshot_times}};
  doc["convolution"] = {{"delay_steps", c.kernel.delay_steps},
                        {"truncation_gamma", number_or_null(c.kernel.truncation_gamma)}};
  doc["probes"] = {{"positions_m", c.probe_positions}};
  return doc;
}

std::string config_hash(const SimConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s, const std::string& hash) {
  auto out = open_out(path);
  out << "# time_s=" << format_double(s.time) << " step=" << s.step << " config_hash=" << hash << '\n';
  out << "x1_m,slip_m,slip_rate_m_s,shear_stress_Pa\n";
  for (std::size_t m = 0; m < s.x.size(); ++m) {
    out << format_double(s.x[m]) << ',' << format_double(s.slip[m]) << ',' << format_double(s.slip_rate[m]) << ','
        << format_double(s.tau[m]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string meta;
  std::string header;
  if (!std::getline(in, meta) || meta.empty() || meta[0] != '#' || !std::getline(in, header)) {
    throw IoError(path.string() + ": missing snapshot header");
  }
  Snapshot s;
  s.time = parse_double(header_value(meta, "time_s", path), path);
  s.step = static_cast<std::size_t>(std::stoull(header_value(meta, "step", path)));
  for (const auto& row : read_rows(in, 4, path)) {
    s.x.push_back(row[0]);
    s.slip.push_back(row[1]);
    s.slip_rate.push_back(row[2]);
    s.tau.push_back(row[3]);
  }
  return s;
}

void write_probe(const std::filesystem::path& path, const ProbeSeries& p, const std::string& hash) {
  auto out = open_out(path);
  out << "# position_m=" << format_double(p.position) << " element=" << p.element << " config_hash=" << hash << '\n';
  out << "t_s,slip_rate_m_s\n";
  for (std::size_t i = 0; i < p.times.size(); ++i) {
    out << format_double(p.times[i]) << ',' << format_double(p.slip_rate[i]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

ProbeSeries read_probe(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string meta;
  std::string header;
  if (!std::getline(in, meta) || meta.empty() || meta[0] != '#' || !std::getline(in, header)) {
    throw IoError(path.string() + ": missing probe header");
  }
  ProbeSeries p;
  p.position = parse_double(header_value(meta, "position_m", path), path);
  p.element = static_cast<std::size_t>(std::stoull(header_value(meta, "element", path)));
  for (const auto& row : read_rows(in, 2, path)) {
    p.times.push_back(row[0]);
    p.slip_rate.push_back(row[1]);
  }
  return p;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  json doc;
  doc["version"] = m.version;
  doc["status"] = m.status;
  doc["started_utc"] = m.started;
  doc["finished_utc"] = m.finished;
  doc["config"] = m.config;
  doc["counters"] = {{"steps", m.counters.steps},
                     {"kernel_multiply_adds", m.counters.multiply_adds},
                     {"wall_seconds", m.counters.wall_seconds},
                     {"seconds_per_step", m.counters.seconds_per_step},
                     {"max_dgamma", m.counters.max_dgamma}};
  doc["warnings"] = m.warnings;
  doc["outputs"] = m.outputs;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::string> write_run(const std::filesystem::path& dir, const SimConfig& config, const RunResult& result,
                                   const std::string& started, const std::string& status) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const std::string hash = config_hash(config);
  std::vector<std::string> names;
  char name[64];
  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i + 1);
    write_snapshot(dir / name, result.snapshots[i], hash);
    names.emplace_back(name);
  }
  for (std::size_t i = 0; i < result.probes.size(); ++i) {
    std::snprintf(name, sizeof name, "probe_%02zu.csv", i + 1);
    write_probe(dir / name, result.probes[i], hash);
    names.emplace_back(name);
  }
  Manifest manifest;
  manifest.config = to_json(config);
  manifest.started = started;
  manifest.finished = utc_now();
  manifest.counters = result.counters;
  manifest.warnings = result.warnings;
  manifest.outputs = names;
  manifest.status = status;
  write_manifest(dir / "manifest.json", manifest);
  names.emplace_back("manifest.json");
  return names;
}

ModalComparison compare_modal(double dgamma, double gamma_max, int delay_steps) {
  ModalComparison cmp;
  cmp.run = oracles::modal_volterra(dgamma, gamma_max, delay_steps * dgamma);
  for (std::size_t i = 0; i < cmp.run.gamma.size(); ++i) {
    const double g = cmp.run.gamma[i];
    const double ana = oracles::modal_analytic(g);
    const double closed = oracles::modal_closed_form(g);
    cmp.analytic.push_back(ana);
    cmp.closed_form.push_back(closed);
    cmp.max_rel_dev = std::max(cmp.max_rel_dev, std::abs(cmp.run.r[i] - ana) / std::max(1.0, ana));
    cmp.max_closed_form_dev = std::max(cmp.max_closed_form_dev, std::abs(closed - ana));
  }
  return cmp;
}

void write_modal_table(const std::filesystem::path& path, const ModalComparison& cmp) {
  auto out = open_out(path);
  out << "# dgamma=" << format_double(cmp.run.dgamma) << " delay_gamma=" << format_double(cmp.run.delay_gamma)
      << " max_rel_dev=" << format_double(cmp.max_rel_dev)
      << " max_closed_form_dev=" << format_double(cmp.max_closed_form_dev) << '\n';
  out << "gamma,r_numeric,r_analytic,r_closed_form,abs_dev,rel_dev\n";
  for (std::size_t i = 0; i < cmp.run.gamma.size(); ++i) {
    const double dev = std::abs(cmp.run.r[i] - cmp.analytic[i]);
    out << format_double(cmp.run.gamma[i]) << ',' << format_double(cmp.run.r[i]) << ','
        << format_double(cmp.analytic[i]) << ',' << format_double(cmp.closed_form[i]) << ',' << format_double(dev)
        << ',' << format_double(dev / std::max(1.0, cmp.analytic[i])) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace sbiem::io
