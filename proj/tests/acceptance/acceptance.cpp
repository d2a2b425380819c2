// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sbiem/io.hpp"
#include "sbiem/kernels.hpp"
#include "sbiem/oracles.hpp"
#include "sbiem/simulator.hpp"
#include "sbiem/specfun.hpp"
#include "sbiem/verify.hpp"

using namespace sbiem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_symmetry(std::span<const double> v) {
  const double scale = max_abs(v);
  return scale > 0.0 ? verify::symmetry_error(v) / scale : 0.0;
}

Outcome modal_accuracy() {
  const auto cmp = io::compare_modal(0.1, 30.0, 0);
  return {cmp.max_rel_dev <= 0.02, fmt("max rel dev %.4g (limit 0.02)", cmp.max_rel_dev)};
}

Outcome long_time_slope() {
  std::vector<double> g, r;
  for (double x = 50.0; x <= 100.0 + 1e-9; x += 0.5) {
    g.push_back(x);
    r.push_back(oracles::modal_analytic(x));
  }
  const double slope = verify::fitted_slope(g, r);
  return {std::abs(slope - 1.0) <= 0.02, fmt("slope %.5f over [50, 100] (limit 1 +/- 0.02)", slope)};
}

Outcome delay_damping() {
  const double plain = verify::oscillatory_residual(0.5, 0, 5.0, 30.0);
  const double delayed = verify::oscillatory_residual(0.5, 1, 5.0, 30.0);
  return {delayed <= plain, fmt("oscillatory residual delayed %.4g vs undelayed %.4g", delayed, plain)};
}

Outcome single_mode_impulse() {
  const auto traj = verify::single_mode_impulse(0.05, 50.0);
  return {traj.error <= 0.01, fmt("sup error %.4g of amplitude over %zu steps (limit 0.01)", traj.error,
                                  traj.gamma.size())};
}

Outcome impulse_field() {
  const auto config = SimConfig::impulse_default();
  const auto report = verify::impulse_comparison(config, config.probe_positions.front());
  return {report.waveform_error <= 0.05,
          fmt("X = %.0f m, amplitude/P %.4f, L2 waveform error %.4g (limit 0.05), peak error %.4g",
              report.position, report.amplitude / config.impulse_magnitude, report.waveform_error,
              report.peak_error)};
}

Outcome laplace_identity() {
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0}) {
    const double numeric = specfun::laplace_transform_numeric(kernel_identical, p, 500.0);
    worst = std::max(worst, std::abs(numeric - (1.0 - p / std::sqrt(1.0 + p * p))));
  }
  return {worst <= 1e-6, fmt("max deviation %.3g at p in {0.5, 1, 2} (limit 1e-6)", worst)};
}

// Invariants of the reference rupture run, checked every step.
Outcome table1_run() {
  const auto config = SimConfig::table1();
  const auto start = std::chrono::steady_clock::now();
  Engine engine(config);
  const auto& grid = engine.grid();
  const auto& law = config.law;
  const std::size_t steps = config.step_count();
  const double front_window = 0.5;
  const auto window_steps = static_cast<std::size_t>(std::llround(front_window / engine.dt()));

  double residual = 0.0, symmetry = 0.0, weakened = 0.0, barrier_slip = 0.0, speed = 0.0;
  std::vector<double> extent;
  while (engine.step() < steps) {
    engine.advance();
    const auto& s = engine.state();
    for (std::size_t m = 0; m < grid.size(); ++m) {
      residual = std::max(residual, std::abs(engine.residual(m)) / law.tau_s);
      if (engine.strength_field().barrier[m]) barrier_slip = std::max(barrier_slip, s.slip[m]);
      else if (s.slip[m] >= law.delta_c) weakened = std::max(weakened, std::abs(s.tau[m] - law.tau_r) / law.tau_s);
    }
    symmetry = std::max({symmetry, relative_symmetry(s.slip), relative_symmetry(s.slip_rate),
                         relative_symmetry(s.tau)});
    extent.push_back(verify::rupture_extent(grid, s.slip));
  }
  // Front speed from extents half a second apart, after the nucleation
  // patch has started sliding; one element of slack for sampling.
  for (std::size_t i = window_steps; i + window_steps < extent.size(); ++i) {
    speed = std::max(speed, (extent[i + window_steps] - extent[i] - grid.dx()) / (window_steps * engine.dt()));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double final_extent = extent.empty() ? 0.0 : extent.back();
  const bool pass = seconds < 300.0 && residual <= 1e-10 && symmetry <= 1e-8 && barrier_slip == 0.0 &&
                    weakened <= 1e-10 && speed <= config.materials.top.cs && final_extent > config.nucleation_length;
  return {pass, fmt("%zu steps in %.1f s; residual/tau_s %.2g, symmetry %.2g, barrier slip %.2g, "
                    "|tau - tau_r|/tau_s %.2g, front speed %.0f m/s (cs %.0f), extent %.0f m",
                    steps, seconds, residual, symmetry, barrier_slip, weakened, speed, config.materials.top.cs,
                    final_extent)};
}

double final_extent(const SimConfig& config) {
  const auto result = run(config);
  return verify::rupture_extent(Grid(config.length, config.elements), result.snapshots.back().slip);
}

Outcome bimaterial() {
  auto base = SimConfig::table1();
  base.snapshot_times = {5.0};
  base.probe_positions.clear();

  // (i) the bimaterial path with identical materials against the plain engine
  auto forced = base;
  forced.kernel_choice = KernelChoice::bimaterial;
  const auto a = run(base).snapshots.back();
  const auto b = run(forced).snapshots.back();
  double degeneracy = 0.0;
  for (const auto fields : {&Snapshot::slip, &Snapshot::slip_rate, &Snapshot::tau}) {
    const auto& u = a.*fields;
    const auto& v = b.*fields;
    const double scale = std::max(max_abs(u), 1e-300);
    for (std::size_t m = 0; m < u.size(); ++m) degeneracy = std::max(degeneracy, std::abs(u[m] - v[m]) / scale);
  }

  // (ii) eta examples
  const auto top = base.materials.top;
  const double eta_fast = eta(MaterialPair::from_ratios(top, 2.0, 2.0));
  const double eta_slow = eta(MaterialPair::from_ratios(top, 0.5, 0.5));
  const bool eta_ok = eta(MaterialPair::identical(top)) == 1.0 && eta_fast == 1.0 && eta_slow == 1.0;

  // (iii) rupture extents at t = 5 s
  const double identical = verify::rupture_extent(Grid(base.length, base.elements), a.slip);
  auto fast = base;
  fast.materials = MaterialPair::from_ratios(top, 2.0, 2.0);
  auto slow = base;
  slow.materials = MaterialPair::from_ratios(top, 0.5, 0.5);
  const double e_fast = final_extent(fast);
  const double e_slow = final_extent(slow);
  const bool extent_ok = e_slow < identical && std::abs(e_fast - identical) <= 0.1 * identical;

  return {degeneracy <= 1e-12 && eta_ok && extent_ok,
          fmt("degeneracy %.2g (limit 1e-12); eta %.17g, %.17g; extent identical %.0f m, c'=2cs %.0f m, "
              "c'=0.5cs %.0f m",
              degeneracy, eta_fast, eta_slow, identical, e_fast, e_slow)};
}

Outcome cross_formulation() {
  const auto cmp = verify::cross_formulation(0.05, 50.0);
  return {cmp.max_rel_dev <= 0.01, fmt("max rel dev %.4g over gamma <= 50 (limit 0.01)", cmp.max_rel_dev)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
    double time_limit;  // seconds; 0 for none
  };
  const std::vector<Criterion> criteria = {
      {1, "modal accuracy", modal_accuracy, 1.0},
      {2, "long-time slope", long_time_slope, 1.0},
      {3, "delay damping", delay_damping, 0.0},
      {4, "single-mode impulse", single_mode_impulse, 1.0},
      {5, "impulse field", impulse_field, 30.0},
      {6, "kernel Laplace identity", laplace_identity, 0.0},
      {7, "reference rupture run", table1_run, 300.0},
      {8, "bimaterial checks", bimaterial, 0.0},
      {9, "cross-formulation", cross_formulation, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit == 0.0 || seconds < c.time_limit;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s  %d  %-24s %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), seconds,
                in_time ? "" : fmt(", limit %.0f s", c.time_limit).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
