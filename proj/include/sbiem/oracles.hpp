#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sbiem::oracles {

/// Nondimensional stress response r(gamma) = -T / (mu / 2cs) of a single
/// mode driven by a unit step in slip rate:
///   r(gamma) = 1 + int_0^gamma (J1(u)/u) (gamma - u) du,
/// evaluated by adaptive quadrature.
double modal_analytic(double gamma);

/// The same response in closed form,
///   r = J0 + (gamma/2) [J1 (pi gamma H0 - 2) - gamma J0 (pi H1 - 2)],
/// with Struve functions H0, H1. Kept as an independent cross-check of the
/// quadrature route.
double modal_closed_form(double gamma);

struct ModalRun {
  double dgamma = 0.0;
  double gamma_max = 0.0;
  double delay_gamma = 0.0;
  std::vector<double> gamma;
  std::vector<double> r;
};

/// Marches r_n = 1 + dgamma sum_m w_m C(gamma_n - gamma_m - delay) r_m
/// through the engine's history and convolution code, with C = J1 and
/// trapezoid weights. delay_gamma must be a whole number of steps.
/// Throws DomainError for bad arguments and NumericError once |r| > 1e12.
ModalRun modal_volterra(double dgamma, double gamma_max, double delay_gamma = 0.0);

/// Slip of a frictionless interface at distance X from an impulsive line
/// load: H(t - X/cs) / (pi mu sqrt(t^2 - (X/cs)^2)). Returns +inf exactly
/// at the arrival time.
double impulse_analytic(double X, double t, double mu, double cs);

/// F(k, t_n) from a slip history D(t_0..t_n) via the slip-history kernel:
///   F = -(mu |k| / 2) int_0^t J1(|k| cs (t - t')) / (t - t') D(t') dt',
/// trapezoid on the step lattice; the zero-lag kernel value is |k| cs / 2.
double single_mode_slip_formulation(std::span<const double> slip_history, double k_abs, double mu, double cs,
                                    double dt);

/// Slip-history kernel shape J1(gamma)/gamma, with the limit 1/2 at 0.
double slip_kernel(double gamma);

}  // namespace sbiem::oracles
