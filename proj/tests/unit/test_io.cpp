#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "sbiem/errors.hpp"
#include "sbiem/io.hpp"

using namespace sbiem;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sbiem_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, EmptyDocumentIsReference) {
  const auto cfg = io::parse_config(json::object());
  const auto ref = SimConfig::table1();
  EXPECT_EQ(cfg.elements, ref.elements);
  EXPECT_EQ(cfg.length, ref.length);
  EXPECT_EQ(cfg.law.tau_s, ref.law.tau_s);
  EXPECT_EQ(cfg.kernel.delay_steps, ref.kernel.delay_steps);
  EXPECT_EQ(io::config_hash(cfg), io::config_hash(ref));
}

TEST(Config, RoundTrip) {
  auto cfg = SimConfig::table1();
  cfg.elements = 512;
  cfg.materials = MaterialPair::from_ratios(cfg.materials.top, 0.5, 0.5);
  cfg.kernel.truncation_gamma = 80.0;
  cfg.snapshot_times = {0.5, 1.5};
  const auto back = io::parse_config(io::to_json(cfg));
  EXPECT_EQ(io::to_json(back), io::to_json(cfg));
  EXPECT_EQ(io::config_hash(back), io::config_hash(cfg));
  EXPECT_NEAR(back.materials.bottom.cs, 0.5 * cfg.materials.top.cs, 1e-9);
}

TEST(Config, ImpulseScenarioDefaults) {
  const auto cfg = io::parse_config(json{{"scenario", "impulse"}});
  EXPECT_EQ(cfg.scenario, Scenario::impulse);
  EXPECT_EQ(cfg.elements, 512u);
  EXPECT_EQ(cfg.beta, 0.5);
}

TEST(Config, BottomFromRatios) {
  const auto cfg = io::parse_config(json::parse(R"({"materials": {"bottom": {"speed_ratio": 2, "modulus_ratio": 2}}})"));
  EXPECT_NEAR(cfg.materials.bottom.cs, 2.0 * cfg.materials.top.cs, 1e-9);
  EXPECT_EQ(cfg.kernel_model(), KernelModel::bimaterial);
}

TEST(Config, Rejections) {
  EXPECT_THROW(io::parse_config(json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(io::parse_config(json{{"grid", {{"elements", 1000}}}}), ConfigError);
  EXPECT_THROW(io::parse_config(json{{"time", {{"beta", 1.5}}}}), ConfigError);
  EXPECT_THROW(io::parse_config(json{{"grid", {{"elements", "many"}}}}), ConfigError);
  EXPECT_THROW(io::parse_config(json{{"scenario", "quake"}}), ConfigError);
  EXPECT_THROW(io::parse_config(json{{"friction", {{"peak_strength_pa", 1e6}, {"residual_strength_pa", 2e6}}}}),
               ConfigError);
}

TEST(Config, MissingFileNamesPath) {
  try {
    io::load_config("/nonexistent/sbiem/config.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/sbiem/config.json"), std::string::npos);
  }
}

TEST(Snapshot, RoundTripIsExact) {
  const auto dir = scratch_dir("snapshot");
  Snapshot s{1.25, 42, {-1.0, 0.0, 1.0 / 3.0}, {0.0, 1e-12, 0.7}, {0.0, 2.5, -1e-300}, {6.3e7, 8.124e7, 7e7}};
  io::write_snapshot(dir / "s.csv", s, "abcdef0123456789");
  std::ifstream in(dir / "s.csv");
  std::string header, columns;
  std::getline(in, header);
  std::getline(in, columns);
  EXPECT_EQ(header.rfind("# time_s=", 0), 0u);
  EXPECT_NE(header.find("config_hash=abcdef0123456789"), std::string::npos);
  EXPECT_EQ(columns, "x1_m,slip_m,slip_rate_m_s,shear_stress_Pa");
  const auto back = io::read_snapshot(dir / "s.csv");
  EXPECT_EQ(back.time, s.time);
  EXPECT_EQ(back.step, s.step);
  EXPECT_EQ(back.x, s.x);
  EXPECT_EQ(back.slip, s.slip);
  EXPECT_EQ(back.slip_rate, s.slip_rate);
  EXPECT_EQ(back.tau, s.tau);
}

TEST(Probe, RoundTrip) {
  const auto dir = scratch_dir("probe");
  ProbeSeries p{4.5e3, 558, {0.0, 0.01, 0.02}, {0.0, 0.5, 1.25}};
  io::write_probe(dir / "p.csv", p, "0000000000000000");
  const auto back = io::read_probe(dir / "p.csv");
  EXPECT_EQ(back.position, p.position);
  EXPECT_EQ(back.element, p.element);
  EXPECT_EQ(back.times, p.times);
  EXPECT_EQ(back.slip_rate, p.slip_rate);
}

TEST(Snapshot, MalformedFile) {
  const auto dir = scratch_dir("bad");
  std::ofstream(dir / "bad.csv") << "# time_s=1 step=2 config_hash=x\nx1_m,slip_m,slip_rate_m_s,shear_stress_Pa\n1,2\n";
  EXPECT_THROW(io::read_snapshot(dir / "bad.csv"), IoError);
  EXPECT_THROW(io::read_snapshot(dir / "missing.csv"), IoError);
}

TEST(WriteRun, ManifestAndFiles) {
  auto cfg = SimConfig::table1();
  cfg.elements = 128;
  cfg.total_time = 0.5;
  cfg.snapshot_times = {0.25, 0.5};
  const auto result = run(cfg);
  const auto dir = scratch_dir("run");
  const auto files = io::write_run(dir, cfg, result, io::utc_now());
  EXPECT_TRUE(fs::exists(dir / "snapshot_001.csv"));
  EXPECT_TRUE(fs::exists(dir / "snapshot_002.csv"));
  EXPECT_TRUE(fs::exists(dir / "probe_01.csv"));
  const auto manifest = json::parse(std::ifstream(dir / "manifest.json"));
  EXPECT_EQ(manifest["status"], "ok");
  EXPECT_EQ(manifest["version"], io::kVersion);
  EXPECT_EQ(manifest["counters"]["steps"], result.counters.steps);
  EXPECT_EQ(io::parse_config(manifest["config"]).elements, 128u);
  EXPECT_EQ(files.size(), 4u);
}

TEST(ModalTable, Written) {
  const auto dir = scratch_dir("modal");
  const auto cmp = io::compare_modal(0.1, 5.0, 0);
  io::write_modal_table(dir / "m.csv", cmp);
  std::ifstream in(dir / "m.csv");
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "gamma,r_numeric,r_analytic,r_closed_form,abs_dev,rel_dev");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, cmp.run.gamma.size());
  EXPECT_LE(cmp.max_closed_form_dev, 1e-10);
}
