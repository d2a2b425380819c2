#include "sbiem/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sbiem/convolution.hpp"
#include "sbiem/errors.hpp"
#include "sbiem/kernels.hpp"
#include "sbiem/specfun.hpp"

namespace sbiem::oracles {

using specfun::bessel_j0;
using specfun::bessel_j1;

double slip_kernel(double gamma) {
  if (std::abs(gamma) < 1e-8) return 0.5 - gamma * gamma / 16.0;
  return bessel_j1(gamma) / gamma;
}

double modal_analytic(double gamma) {
  if (gamma < 0.0) throw DomainError("modal_analytic: negative gamma");
  const auto integrand = [gamma](double u) { return slip_kernel(u) * (gamma - u); };
  return 1.0 + specfun::integrate(integrand, 0.0, gamma, 2.0);
}

double modal_closed_form(double gamma) {
  if (gamma < 0.0) throw DomainError("modal_closed_form: negative gamma");
  const double pi = std::numbers::pi;
  const double j0 = bessel_j0(gamma);
  const double j1 = bessel_j1(gamma);
  return j0 + 0.5 * gamma *
                  (j1 * (pi * gamma * specfun::struve_h0(gamma) - 2.0) -
                   gamma * j0 * (pi * specfun::struve_h1(gamma) - 2.0));
}

ModalRun modal_volterra(double dgamma, double gamma_max, double delay_gamma) {
  if (!(dgamma > 0.0)) throw DomainError("modal_volterra: dgamma must be positive");
  if (!(gamma_max >= 0.0)) throw DomainError("modal_volterra: gamma_max must be non-negative");
  const double delay_ratio = delay_gamma / dgamma;
  const double delay_steps = std::round(delay_ratio);
  if (delay_gamma < 0.0 || std::abs(delay_ratio - delay_steps) > 1e-9 * std::max(1.0, delay_ratio)) {
    throw DomainError("modal_volterra: delay must be a non-negative whole number of steps");
  }

  const auto steps = static_cast<std::size_t>(std::floor(gamma_max / dgamma + 1e-9));
  // Unit wavenumber and wave speed make dt = dgamma and the kernel J1.
  const double k_abs[] = {1.0};
  const auto unit = Material::from_density_speed(1.0, 1.0);
  const KernelTable table(KernelModel::identical, MaterialPair::identical(unit), k_abs, dgamma, steps,
                          KernelConfig{std::numeric_limits<double>::infinity(), static_cast<int>(delay_steps)});

  ModalRun out;
  out.dgamma = dgamma;
  out.gamma_max = gamma_max;
  out.delay_gamma = delay_steps * dgamma;
  out.gamma.reserve(steps + 1);
  out.r.reserve(steps + 1);

  ModeHistory history;
  for (std::size_t n = 0; n <= steps; ++n) {
    // The unknown r_n multiplies the zero-lag kernel value, so the sum over
    // the already-stored history is the full discrete integral.
    const double r = 1.0 + convolve(history, table.row(0), dgamma, n).real();
    if (!std::isfinite(r) || std::abs(r) > 1e12) {
      throw NumericError("modal_volterra: solution blew up at gamma = " + std::to_string(n * dgamma) +
                         " (dgamma = " + std::to_string(dgamma) + ")");
    }
    history.push(r, n);
    out.gamma.push_back(static_cast<double>(n) * dgamma);
    out.r.push_back(r);
  }
  return out;
}

double impulse_analytic(double X, double t, double mu, double cs) {
  const double arrival = X / cs;
  if (t < arrival) return 0.0;
  if (t == arrival) return std::numeric_limits<double>::infinity();
  return 1.0 / (std::numbers::pi * mu * std::sqrt(t * t - arrival * arrival));
}

double single_mode_slip_formulation(std::span<const double> slip_history, double k_abs, double mu, double cs,
                                    double dt) {
  if (slip_history.empty() || k_abs == 0.0) return 0.0;
  const std::size_t n = slip_history.size() - 1;
  const double a = k_abs * cs;
  // J1(a s) / s = a M(a s).
  double sum = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    const double lag = static_cast<double>(n - m) * dt;
    double w = 1.0;
    if (m == 0 || m == n) w = 0.5;
    if (n == 0) w = 0.0;
    sum += w * a * slip_kernel(a * lag) * slip_history[m];
  }
  return -0.5 * mu * k_abs * dt * sum;
}

}  // namespace sbiem::oracles
