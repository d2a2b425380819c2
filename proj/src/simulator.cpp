#include "sbiem/simulator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sbiem/parallel.hpp"

namespace sbiem {

SimConfig SimConfig::table1() { return SimConfig{}; }

SimConfig SimConfig::impulse_default() {
  SimConfig cfg;
  cfg.scenario = Scenario::impulse;
  cfg.length = 51.2e3;
  cfg.elements = 512;
  cfg.barrier_length = 0.0;
  cfg.nucleation_length = 0.0;
  cfg.beta = 0.5;
  cfg.kernel = KernelConfig{};
  // The probe sits under L/5 from the source so the first periodic image
  // arrives after 4 X / cs.
  cfg.total_time = 12.0;
  cfg.snapshot_times = {1.0, 2.0, 4.0, 8.0, 12.0};
  cfg.probe_positions = {9.6e3};
  return cfg;
}

void SimConfig::validate() const {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (beta > 1.0) throw ConfigError("beta must not exceed 1 (explicit scheme is unstable), got " + std::to_string(beta));
  if (elements < 2 || !std::has_single_bit(elements)) {
    throw ConfigError("element count must be a power of two, got " + std::to_string(elements));
  }
  if (!(length > 0.0)) throw ConfigError("interface length must be positive");
  if (barrier_length < 0.0 || nucleation_length < 0.0) {
    throw ConfigError("barrier and nucleation lengths must be non-negative");
  }
  if (scenario == Scenario::rupture && !(nucleation_length + 2.0 * barrier_length < length)) {
    throw ConfigError("nucleation length plus both barriers must be shorter than the interface");
  }
  if (law.tau_r > law.tau_s) throw ConfigError("residual strength tau_r exceeds peak strength tau_s");
  law.validate();
  materials.top.validate();
  materials.bottom.validate();
  kernel.validate();
  if (kernel_choice == KernelChoice::identical && !materials.is_identical()) {
    throw ConfigError("identical-material kernel requested for dissimilar materials");
  }
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) throw ConfigError("total_time must be non-negative");
  if (!std::isnan(tau_barrier) && tau_barrier < law.tau_s) {
    throw ConfigError("barrier strength must be at least the peak strength");
  }
}

std::size_t SimConfig::step_count() const {
  const double ratio = total_time / dt();
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9));
}

double SimConfig::barrier_strength() const { return std::isnan(tau_barrier) ? 1e3 * law.tau_s : tau_barrier; }

KernelModel SimConfig::kernel_model() const {
  switch (kernel_choice) {
    case KernelChoice::identical: return KernelModel::identical;
    case KernelChoice::bimaterial: return KernelModel::bimaterial;
    case KernelChoice::automatic: break;
  }
  return materials.is_identical() ? KernelModel::identical : KernelModel::bimaterial;
}

double SimConfig::max_dgamma() const {
  // |k|max = pi / dx, so |k|max c dt = pi beta c / c_top.
  return std::numbers::pi * beta * materials.max_speed() / materials.top.cs;
}

Engine::Engine(const SimConfig& config)
    : config_((config.validate(), config)),
      grid_(config.length, config.elements),
      transform_(grid_),
      strength_(config.scenario == Scenario::rupture
                    ? StrengthField::with_edge_barriers(grid_, config.law, config.barrier_length,
                                                        config.barrier_strength())
                    : StrengthField::uniform(grid_, config.law)),
      model_(config.kernel_model()) {
  dt_ = config_.dt();
  threads_ = config_.threads == 0 ? default_thread_count() : config_.threads;
  eta_ = model_ == KernelModel::identical ? 1.0 : sbiem::eta(config_.materials);
  radiation_ = config_.materials.top.radiation_coefficient();

  const auto k_abs = grid_.half_spectrum_k_abs();
  table_ = std::make_unique<KernelTable>(model_, config_.materials, k_abs, dt_, config_.step_count(),
                                         config_.kernel);
  histories_.reserve(k_abs.size());
  for (std::size_t i = 0; i < k_abs.size(); ++i) histories_.emplace_back(table_->window(i));

  const std::size_t n = grid_.size();
  state_.slip.assign(n, 0.0);
  state_.slip_rate.assign(n, 0.0);
  state_.tau.assign(n, 0.0);
  f_.assign(n, 0.0);
  scratch_.assign(n, 0.0);
  modes_t_.assign(k_abs.size(), Complex{});
  modes_f_.assign(k_abs.size(), Complex{});
  branches_.assign(n, FrictionBranch::stuck);
  impulse_element_ = grid_.nearest_sample(0.0);
  initialize();
}

void Engine::initialize() {
  if (config_.scenario == Scenario::rupture) {
    state_.tau0 = background_stress_profile(grid_, config_.tau_bg, config_.tau_nuc, config_.nucleation_length,
                                            config_.barrier_length);
    // f = 0 at t = 0, so this yields tau = min(tau0, tau_s) and starts
    // sliding in the nucleation patch.
    solve_rupture();
  } else {
    state_.tau0.assign(grid_.size(), 0.0);
    solve_impulse(config_.impulse_magnitude / (grid_.dx() * dt_));
  }
  check_finite();
}

void Engine::solve_rupture() {
  const double coeff = radiation_ / eta_;
  parallel_for(grid_.size(), threads_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const auto& law = strength_.laws[m];
      const double tau_f = strength(law, state_.slip[m]);
      const auto sol = solve_interface(f_[m] / eta_, state_.tau0[m], tau_f, coeff, state_.slip[m], law.delta_c,
                                       law.tau_r);
      state_.slip_rate[m] = sol.slip_rate;
      state_.tau[m] = sol.tau;
      branches_[m] = sol.branch;
    }
  });
}

void Engine::solve_impulse(double impulse_stress) {
  std::fill(state_.tau0.begin(), state_.tau0.end(), 0.0);
  state_.tau0[impulse_element_] = impulse_stress;
  for (std::size_t m = 0; m < grid_.size(); ++m) {
    state_.tau[m] = 0.0;
    state_.slip_rate[m] = (f_[m] + eta_ * state_.tau0[m]) / radiation_;
  }
}

void Engine::advance() {
  const std::size_t next = step_ + 1;
  const std::size_t n = grid_.size();

  for (std::size_t m = 0; m < n; ++m) scratch_[m] = state_.tau[m] - state_.tau0[m];
  transform_.forward_half(scratch_, modes_t_);
  for (std::size_t i = 0; i < histories_.size(); ++i) histories_[i].push(modes_t_[i], step_);

  const auto origin = config_.scenario == Scenario::impulse ? OriginWeight::impulse : OriginWeight::trapezoid;
  multiply_adds_ += convolve_all(histories_, *table_, next, modes_f_, threads_, origin);
  transform_.inverse_half(modes_f_, f_);

  const bool clamp = config_.scenario == Scenario::rupture;
  for (std::size_t m = 0; m < n; ++m) {
    const double slip = state_.slip[m] + state_.slip_rate[m] * dt_;
    state_.slip[m] = clamp ? std::max(0.0, slip) : slip;
  }
  step_ = next;
  state_.t = static_cast<double>(step_) * dt_;

  if (config_.scenario == Scenario::rupture) {
    solve_rupture();
  } else {
    solve_impulse(0.0);
  }
  check_finite();
}

void Engine::check_finite() const {
  for (std::size_t m = 0; m < grid_.size(); ++m) {
    if (!std::isfinite(state_.slip[m]) || !std::isfinite(state_.slip_rate[m]) || !std::isfinite(state_.tau[m])) {
      std::ostringstream msg;
      msg << "non-finite field at element " << m << " (x = " << grid_.x(m) << " m)";
      throw DivergenceError(step_, msg.str());
    }
  }
}

double Engine::residual(std::size_t m) const {
  return radiation_ * state_.slip_rate[m] + eta_ * (state_.tau[m] - state_.tau0[m]) - f_[m];
}

Snapshot take_snapshot(const Engine& engine) {
  const auto& s = engine.state();
  return {s.t, engine.step(), engine.grid().x_centers(), s.slip, s.slip_rate, s.tau};
}

std::vector<std::string> config_warnings(const SimConfig& config) {
  std::vector<std::string> out;
  const double dgamma = config.max_dgamma();
  if (dgamma > 0.1) {
    std::ostringstream msg;
    msg << "max dgamma = " << dgamma << " exceeds 0.1 for the highest wavenumber; modal accuracy is reduced there";
    out.push_back(msg.str());
  }
  if (config.kernel.truncated()) {
    // Landau: |J1(x)| <= 0.7858 x^(-1/3).
    std::ostringstream msg;
    msg << "kernel history truncated at gamma = " << config.kernel.truncation_gamma
        << "; dropped kernel values satisfy |C| <= " << 0.7858 * std::cbrt(1.0 / config.kernel.truncation_gamma);
    out.push_back(msg.str());
  }
  return out;
}

RunResult run(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.warnings = config_warnings(config);
  Engine engine(config);
  const std::size_t steps = config.step_count();
  const double dt = engine.dt();

  std::vector<std::size_t> snapshot_steps;
  for (double t : config.snapshot_times) {
    if (t < 0.0 || t > config.total_time + 1e-9 * dt) continue;
    snapshot_steps.push_back(static_cast<std::size_t>(std::llround(t / dt)));
  }
  if (snapshot_steps.empty()) snapshot_steps.push_back(steps);

  for (double pos : config.probe_positions) {
    ProbeSeries probe;
    probe.position = pos;
    probe.element = engine.grid().nearest_sample(pos);
    probe.times.reserve(steps + 1);
    probe.slip_rate.reserve(steps + 1);
    result.probes.push_back(std::move(probe));
  }

  const auto record = [&] {
    for (auto& probe : result.probes) {
      probe.times.push_back(engine.state().t);
      probe.slip_rate.push_back(engine.state().slip_rate[probe.element]);
    }
    for (std::size_t s : snapshot_steps) {
      if (s == engine.step()) result.snapshots.push_back(take_snapshot(engine));
    }
  };

  const auto finish = [&] {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.counters.steps = engine.step();
    result.counters.multiply_adds = engine.multiply_adds();
    result.counters.wall_seconds = wall;
    result.counters.seconds_per_step = engine.step() > 0 ? wall / static_cast<double>(engine.step()) : 0.0;
    result.counters.max_dgamma = config.max_dgamma();
  };

  record();
  while (engine.step() < steps) {
    Snapshot last_good = take_snapshot(engine);
    try {
      engine.advance();
    } catch (const DivergenceError& e) {
      finish();
      throw RunDivergedError(e, std::move(result), std::move(last_good));
    }
    record();
  }
  finish();
  return result;
}

}  // namespace sbiem
