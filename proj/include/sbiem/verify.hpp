#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "sbiem/simulator.hpp"

namespace sbiem::verify {

/// Slip at one element of an impulse run against the analytic line-load
/// solution, after fitting a single amplitude constant at t = 2 X / cs.
struct ImpulseReport {
  double position = 0.0;  // sample position actually used, m
  double arrival = 0.0;   // X / cs, s
  std::vector<double> times;
  std::vector<double> slip;
  std::vector<double> reference;  // amplitude * analytic
  double amplitude = 0.0;
  /// ||slip - reference||_2 / ||reference||_2 over the samples with
  /// t in [1.5, 4] X / cs.
  double waveform_error = 0.0;
  /// max |slip - reference| / max |reference| over the same window. Carries
  /// the grid-scale ringing of the delta load, so it sits above the L2 value.
  double peak_error = 0.0;
};

ImpulseReport impulse_comparison(const SimConfig& config, double position);

/// Lowest nonzero mode of a frictionless impulse run against
/// D(k, t) = P / (L rad) J0(|k| cs (t - dt/2)); the grid and beta are chosen
/// so that mode has step dgamma.
struct ModeTrajectory {
  double dgamma = 0.0;
  std::vector<double> gamma;
  std::vector<double> numeric;
  std::vector<double> reference;
  double error = 0.0;  // sup |numeric - reference| / (P / (L rad))
};

ModeTrajectory single_mode_impulse(double dgamma, double gamma_max, std::size_t elements = 64);

/// Stress-history (modal Volterra) and slip-history reconstructions of the
/// same unit slip-rate step, |k| = cs = mu = 1.
struct CrossFormulation {
  std::vector<double> gamma;
  std::vector<double> stress_history;
  std::vector<double> slip_history;
  double max_rel_dev = 0.0;  // |a - b| / max(1, |a|)
};

CrossFormulation cross_formulation(double dgamma, double gamma_max);

/// Oscillatory part of the modal Volterra error: r_num - r_analytic over
/// [gamma_lo, gamma_hi] with its least-squares line removed, in sup-norm.
/// The delay shifts the solution by a slow drift; the oscillation is what it
/// damps.
double oscillatory_residual(double dgamma, int delay_steps, double gamma_lo, double gamma_hi);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

/// Laplace-transform identity of the J1 kernel at p = 0.5, 1, 2, the
/// bimaterial kernel's reduction to the identical kernel, and eta examples.
nlohmann::json kernel_checks();

/// max |f(x) - f(-x)| on the periodic grid.
double symmetry_error(std::span<const double> field);

/// Largest |x| of an element with nonzero slip; 0 if nothing has slipped.
double rupture_extent(const Grid& grid, std::span<const double> slip);

}  // namespace sbiem::verify
