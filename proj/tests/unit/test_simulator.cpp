#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <span>

#include "sbiem/errors.hpp"
#include "sbiem/simulator.hpp"
#include "sbiem/verify.hpp"

using namespace sbiem;

namespace {

// Reference rupture on a quarter of the elements and a shorter run.
SimConfig small_rupture() {
  auto cfg = SimConfig::table1();
  cfg.elements = 256;
  cfg.total_time = 2.0;
  cfg.snapshot_times = {1.0, 2.0};
  cfg.probe_positions = {4.5e3};
  cfg.threads = 1;
  return cfg;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(SimConfig, ReferenceValues) {
  const auto cfg = SimConfig::table1();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.dx(), 100e3 / 1024);
  EXPECT_DOUBLE_EQ(cfg.dt(), 0.3 * cfg.dx() / 3464.0);
  EXPECT_EQ(cfg.step_count(), static_cast<std::size_t>(std::ceil(5.0 / cfg.dt())));
  EXPECT_DOUBLE_EQ(cfg.barrier_strength(), 1e3 * cfg.law.tau_s);
  EXPECT_EQ(cfg.kernel_model(), KernelModel::identical);
  EXPECT_EQ(cfg.kernel.delay_steps, 1);
}

TEST(SimConfig, ValidationMessages) {
  auto cfg = SimConfig::table1();
  cfg.beta = 1.2;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SimConfig::table1();
  cfg.elements = 1000;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SimConfig::table1();
  cfg.nucleation_length = 40e3;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SimConfig::table1();
  cfg.law.tau_r = 90e6;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SimConfig::table1();
  cfg.kernel_choice = KernelChoice::identical;
  cfg.materials = MaterialPair::from_ratios(cfg.materials.top, 2.0, 2.0);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SimConfig, StepCountExactMultiple) {
  auto cfg = SimConfig::table1();
  cfg.total_time = 10.0 * cfg.dt();
  EXPECT_EQ(cfg.step_count(), 10u);
}

TEST(Engine, InitialStateSlidesOnlyInNucleationZone) {
  const auto cfg = small_rupture();
  const Engine engine(cfg);
  const auto& s = engine.state();
  for (std::size_t m = 0; m < engine.grid().size(); ++m) {
    const bool nucleation = std::abs(engine.grid().x(m)) <= 0.5 * cfg.nucleation_length;
    EXPECT_EQ(s.slip[m], 0.0);
    EXPECT_DOUBLE_EQ(s.tau[m], std::min(s.tau0[m], engine.strength_field().at(m, 0.0)));
    EXPECT_EQ(s.slip_rate[m] > 0.0, nucleation) << m;
  }
}

TEST(Engine, RuptureInvariants) {
  const auto cfg = small_rupture();
  Engine engine(cfg);
  const auto& law = cfg.law;
  while (engine.step() < cfg.step_count()) {
    engine.advance();
    const auto& s = engine.state();
    for (std::size_t m = 0; m < engine.grid().size(); ++m) {
      ASSERT_LE(std::abs(engine.residual(m)), 1e-10 * law.tau_s);
      ASSERT_GE(s.slip[m], 0.0);
      if (engine.strength_field().barrier[m]) ASSERT_EQ(s.slip[m], 0.0);
      else if (s.slip[m] >= law.delta_c) ASSERT_EQ(s.tau[m], law.tau_r);
    }
    ASSERT_LE(verify::symmetry_error(s.slip), 1e-8 * std::max(1e-300, max_abs(s.slip)));
    ASSERT_LE(verify::symmetry_error(s.tau), 1e-8 * max_abs(s.tau));
  }
  EXPECT_NEAR(engine.state().t, cfg.step_count() * engine.dt(), 1e-12);
  EXPECT_GT(verify::rupture_extent(engine.grid(), engine.state().slip), 0.5 * cfg.nucleation_length);
  EXPECT_GT(engine.multiply_adds(), 0u);
}

TEST(Engine, ThreadCountDoesNotChangeResults) {
  auto a = small_rupture();
  auto b = a;
  b.threads = 3;
  const auto ra = run(a);
  const auto rb = run(b);
  ASSERT_EQ(ra.snapshots.size(), rb.snapshots.size());
  for (std::size_t i = 0; i < ra.snapshots.size(); ++i) {
    EXPECT_EQ(ra.snapshots[i].slip, rb.snapshots[i].slip);
    EXPECT_EQ(ra.snapshots[i].tau, rb.snapshots[i].tau);
  }
}

TEST(Engine, BimaterialPathDegeneratesToIdentical) {
  auto a = small_rupture();
  auto b = a;
  b.kernel_choice = KernelChoice::bimaterial;
  Engine ea(a), eb(b);
  EXPECT_EQ(eb.kernel_model(), KernelModel::bimaterial);
  EXPECT_EQ(eb.eta(), 1.0);
  while (ea.step() < a.step_count()) {
    ea.advance();
    eb.advance();
  }
  const double scale = max_abs(ea.state().slip);
  for (std::size_t m = 0; m < ea.grid().size(); ++m) {
    EXPECT_NEAR(ea.state().slip[m], eb.state().slip[m], 1e-12 * scale);
  }
}

TEST(Engine, SlowerBottomSolidSlowsRupture) {
  auto base = small_rupture();
  auto slow = base;
  slow.materials = MaterialPair::from_ratios(base.materials.top, 0.5, 0.5);
  const auto a = run(base).snapshots.back();
  const auto b = run(slow).snapshots.back();
  const Grid grid(base.length, base.elements);
  EXPECT_LT(verify::rupture_extent(grid, b.slip), verify::rupture_extent(grid, a.slip));
}

TEST(Impulse, CausalAndSymmetric) {
  const auto cfg = SimConfig::impulse_default();
  Engine engine(cfg);
  const double X = 6.4e3;
  const std::size_t element = engine.grid().nearest_sample(X);
  const double arrival = X / cfg.materials.top.cs;
  double before = 0.0, after = 0.0;
  while (engine.state().t < 2.0 * arrival) {
    engine.advance();
    const double slip = std::abs(engine.state().slip[element]);
    // Allow a few elements of band-limited spreading ahead of the front.
    if (engine.state().t < arrival - 4.0 * cfg.dx() / cfg.materials.top.cs) before = std::max(before, slip);
    else after = std::max(after, slip);
    ASSERT_LE(verify::symmetry_error(engine.state().slip), 1e-12 * max_abs(engine.state().slip));
    for (double tau : engine.state().tau) ASSERT_EQ(tau, 0.0);
  }
  EXPECT_LT(before, 0.05 * after);
}

TEST(Impulse, OverflowIsDivergence) {
  // dx * dt underflows to zero, so the impulse stress is infinite.
  auto cfg = SimConfig::impulse_default();
  cfg.length = 1e-200;
  cfg.impulse_magnitude = 1.0;
  EXPECT_THROW(Engine{cfg}, DivergenceError);
}

TEST(Run, SnapshotsAndProbes) {
  const auto cfg = small_rupture();
  const auto result = run(cfg);
  ASSERT_EQ(result.snapshots.size(), 2u);
  EXPECT_NEAR(result.snapshots[0].time, 1.0, cfg.dt());
  EXPECT_NEAR(result.snapshots[1].time, 2.0, cfg.dt());
  ASSERT_EQ(result.probes.size(), 1u);
  EXPECT_EQ(result.probes[0].times.size(), cfg.step_count() + 1);
  EXPECT_EQ(result.counters.steps, cfg.step_count());
  EXPECT_GT(result.counters.multiply_adds, 0u);
  EXPECT_TRUE(result.warnings.empty() || result.warnings.front().find("dgamma") != std::string::npos);
}

TEST(Run, FinalStateWhenNoSnapshotTimeFits) {
  auto cfg = small_rupture();
  cfg.total_time = 0.1;
  const auto result = run(cfg);
  ASSERT_EQ(result.snapshots.size(), 1u);
  EXPECT_EQ(result.snapshots[0].step, cfg.step_count());
}

TEST(Warnings, TruncationAndDgamma) {
  auto cfg = SimConfig::table1();
  cfg.kernel.truncation_gamma = 50.0;
  const auto w = config_warnings(cfg);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NE(w[0].find("dgamma"), std::string::npos);
  EXPECT_NE(w[1].find("truncated"), std::string::npos);
}
