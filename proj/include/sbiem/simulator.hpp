#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sbiem/convolution.hpp"
#include "sbiem/errors.hpp"
#include "sbiem/friction.hpp"
#include "sbiem/grid.hpp"
#include "sbiem/kernels.hpp"

namespace sbiem {

enum class Scenario { rupture, impulse };

/// Which convolution kernel the engine uses. `automatic` picks the
/// identical-material kernel when both half-planes match.
enum class KernelChoice { automatic, identical, bimaterial };

struct SimConfig {
  Scenario scenario = Scenario::rupture;

  // Geometry.
  double length = 100e3;
  std::size_t elements = 1024;
  double barrier_length = 35e3;
  double nucleation_length = 3e3;

  MaterialPair materials = MaterialPair::identical(Material::from_density_speed(2670.0, 3464.0));
  KernelChoice kernel_choice = KernelChoice::automatic;

  // Loading.
  double tau_bg = 70.00e6;
  double tau_nuc = 81.60e6;
  double impulse_magnitude = 1.0;  // N s / m, impulse scenario only

  SlipWeakeningLaw law{81.24e6, 63.00e6, 0.40};
  /// Strength inside the edge barriers; NaN selects 1000 * tau_s.
  double tau_barrier = std::numeric_limits<double>::quiet_NaN();

  /// Courant parameter: dt = beta dx / cs of the top half-plane.
  double beta = 0.30;
  KernelConfig kernel{std::numeric_limits<double>::infinity(), 1};
  double total_time = 5.0;
  std::vector<double> snapshot_times{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> probe_positions{4.5e3};

  /// Worker threads for the per-mode and per-element passes; 0 selects
  /// default_thread_count().
  unsigned threads = 0;

  /// Rupture on an interface between identical solids with the standard
  /// reference parameters (100 km interface, 1024 elements, beta 0.3).
  static SimConfig table1();

  /// Frictionless impulse at x = 0 on a 512-element grid with beta 0.5.
  static SimConfig impulse_default();

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  double dx() const { return length / static_cast<double>(elements); }
  double dt() const { return beta * dx() / materials.top.cs; }
  std::size_t step_count() const;
  double barrier_strength() const;
  KernelModel kernel_model() const;
  /// Largest per-step nondimensional increment |k| cs dt over all modes.
  double max_dgamma() const;
};

/// Explicit time-stepping engine. Step 0 is the state at t = 0; each
/// advance() moves one dt:
///   1. transform tau - tau0 of the previous step and append it to the
///      per-mode histories;
///   2. convolve the histories with the kernel table;
///   3. inverse transform to f(x, t);
///   4. explicit Euler update of slip from the previous slip rate;
///   5. strength from the new slip;
///   6. pointwise solve of (mu/2cs) slip_rate + eta (tau - tau0) = f with
///      the friction law (rupture) or tau = 0 (impulse).
class Engine {
 public:
  explicit Engine(const SimConfig& config);

  /// Throws DivergenceError if any field becomes non-finite.
  void advance();

  const InterfaceState& state() const { return state_; }
  std::size_t step() const { return step_; }
  double dt() const { return dt_; }
  const Grid& grid() const { return grid_; }
  const SimConfig& config() const { return config_; }
  const StrengthField& strength_field() const { return strength_; }
  KernelModel kernel_model() const { return model_; }

  /// f(x, t) of the current step (zero at step 0).
  const SpatialField& convolution_field() const { return f_; }
  const std::vector<FrictionBranch>& branches() const { return branches_; }
  /// Per-mode stress histories, modes j = 0..N/2.
  const std::vector<ModeHistory>& histories() const { return histories_; }
  const KernelTable& kernel_table() const { return *table_; }

  double eta() const { return eta_; }
  /// mu / (2 cs) of the top half-plane.
  double radiation_coefficient() const { return radiation_; }

  /// mu/(2cs) slip_rate + eta (tau - tau0) - f at an element.
  double residual(std::size_t element) const;

  std::size_t multiply_adds() const { return multiply_adds_; }

 private:
  void initialize();
  void solve_rupture();
  void solve_impulse(double impulse_stress);
  void check_finite() const;

  SimConfig config_;
  Grid grid_;
  SpectralTransform transform_;
  StrengthField strength_;
  KernelModel model_;
  std::unique_ptr<KernelTable> table_;
  std::vector<ModeHistory> histories_;
  InterfaceState state_;
  SpatialField f_;
  SpatialField scratch_;
  std::vector<Complex> modes_t_;
  std::vector<Complex> modes_f_;
  std::vector<FrictionBranch> branches_;
  std::size_t impulse_element_ = 0;
  unsigned threads_ = 1;
  double dt_ = 0.0;
  double eta_ = 1.0;
  double radiation_ = 0.0;
  std::size_t step_ = 0;
  std::size_t multiply_adds_ = 0;
};

struct Snapshot {
  double time = 0.0;
  std::size_t step = 0;
  std::vector<double> x;
  std::vector<double> slip;
  std::vector<double> slip_rate;
  std::vector<double> tau;
};

Snapshot take_snapshot(const Engine& engine);

/// Slip rate sampled every step at the element nearest `position`.
struct ProbeSeries {
  double position = 0.0;
  std::size_t element = 0;
  std::vector<double> times;
  std::vector<double> slip_rate;
};

struct Counters {
  std::size_t steps = 0;
  std::size_t multiply_adds = 0;
  double wall_seconds = 0.0;
  double seconds_per_step = 0.0;
  double max_dgamma = 0.0;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<ProbeSeries> probes;
  Counters counters;
  std::vector<std::string> warnings;
};

/// Thrown by run() on divergence; carries everything recorded so far plus a
/// snapshot of the last finite state.
class RunDivergedError : public DivergenceError {
 public:
  RunDivergedError(const DivergenceError& cause, RunResult partial, Snapshot last_good)
      : DivergenceError(cause), partial_(std::move(partial)), last_good_(std::move(last_good)) {}

  const RunResult& partial() const { return partial_; }
  const Snapshot& last_good() const { return last_good_; }

 private:
  RunResult partial_;
  Snapshot last_good_;
};

/// Advisory messages for a configuration (large dgamma, truncation bound).
std::vector<std::string> config_warnings(const SimConfig& config);

/// Steps the engine to total_time, recording snapshots at the requested
/// times (nearest step) and probe series every step. If no requested time
/// falls inside the run, the final state is recorded instead.
RunResult run(const SimConfig& config);

}  // namespace sbiem
