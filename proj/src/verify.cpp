#include "sbiem/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sbiem/errors.hpp"
#include "sbiem/grid.hpp"
#include "sbiem/kernels.hpp"
#include "sbiem/oracles.hpp"
#include "sbiem/specfun.hpp"

namespace sbiem::verify {

ImpulseReport impulse_comparison(const SimConfig& config, double position) {
  Engine engine(config);
  const std::size_t element = engine.grid().nearest_sample(position);
  const double x = std::abs(engine.grid().x(element));
  const auto& top = config.materials.top;

  ImpulseReport report;
  report.position = x;
  report.arrival = x / top.cs;
  const std::size_t steps = config.step_count();
  report.times.reserve(steps + 1);
  report.slip.reserve(steps + 1);
  report.times.push_back(0.0);
  report.slip.push_back(engine.state().slip[element]);
  while (engine.step() < steps) {
    engine.advance();
    report.times.push_back(engine.state().t);
    report.slip.push_back(engine.state().slip[element]);
  }

  const auto fit = static_cast<std::size_t>(std::llround(2.0 * report.arrival / engine.dt()));
  if (fit >= report.times.size()) {
    throw ConfigError("impulse run ends before t = 2 X / cs; increase total_time_s");
  }
  // The load is a box over the first step; time the reference from its
  // centroid.
  const double origin = 0.5 * engine.dt();
  report.amplitude = report.slip[fit] / oracles::impulse_analytic(x, report.times[fit] - origin, top.mu, top.cs);

  double worst = 0.0;
  double scale = 0.0;
  double err2 = 0.0;
  double ref2 = 0.0;
  report.reference.resize(report.times.size());
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double t = report.times[i];
    const double ref = report.amplitude * oracles::impulse_analytic(x, std::max(0.0, t - origin), top.mu, top.cs);
    report.reference[i] = std::isfinite(ref) ? ref : std::numeric_limits<double>::quiet_NaN();
    if (t >= 1.5 * report.arrival && t <= 4.0 * report.arrival) {
      const double diff = report.slip[i] - ref;
      worst = std::max(worst, std::abs(diff));
      scale = std::max(scale, std::abs(ref));
      err2 += diff * diff;
      ref2 += ref * ref;
    }
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  report.peak_error = scale > 0.0 ? worst / scale : inf;
  report.waveform_error = ref2 > 0.0 ? std::sqrt(err2 / ref2) : inf;
  return report;
}

ModeTrajectory single_mode_impulse(double dgamma, double gamma_max, std::size_t elements) {
  if (!(dgamma > 0.0) || !(gamma_max > 0.0)) throw DomainError("single_mode_impulse: dgamma and gamma_max must be positive");
  auto config = SimConfig::impulse_default();
  config.elements = elements;
  config.length = static_cast<double>(elements) * 1e3;
  // dgamma = (2 pi / L) cs dt = 2 pi beta / N
  config.beta = dgamma * static_cast<double>(elements) / (2.0 * std::numbers::pi);
  const double wave_rate = 2.0 * std::numbers::pi / config.length * config.materials.top.cs;
  config.total_time = gamma_max / wave_rate;
  config.snapshot_times.clear();
  config.probe_positions.clear();

  Engine engine(config);
  const SpectralTransform transform(engine.grid());
  const double scale = config.impulse_magnitude / (config.length * engine.radiation_coefficient());
  const auto steps = static_cast<std::size_t>(std::floor(gamma_max / dgamma + 1e-9));

  ModeTrajectory out;
  out.dgamma = dgamma;
  while (engine.step() < steps) {
    engine.advance();
    const double g = static_cast<double>(engine.step()) * dgamma;
    const double numeric = transform.forward(engine.state().slip)[1].real();
    const double reference = scale * specfun::bessel_j0(g - 0.5 * dgamma);
    out.gamma.push_back(g);
    out.numeric.push_back(numeric);
    out.reference.push_back(reference);
    out.error = std::max(out.error, std::abs(numeric - reference) / scale);
  }
  return out;
}

CrossFormulation cross_formulation(double dgamma, double gamma_max) {
  const auto volterra = oracles::modal_volterra(dgamma, gamma_max);
  CrossFormulation out;
  out.gamma = volterra.gamma;
  out.stress_history = volterra.r;
  // A unit slip-rate step has D = gamma; r = 1 - 2F in these units.
  std::vector<double> slip;
  slip.reserve(volterra.gamma.size());
  for (const double g : volterra.gamma) {
    slip.push_back(g);
    const double r = 1.0 - 2.0 * oracles::single_mode_slip_formulation(slip, 1.0, 1.0, 1.0, dgamma);
    out.slip_history.push_back(r);
  }
  for (std::size_t i = 0; i < out.gamma.size(); ++i) {
    const double a = out.stress_history[i];
    out.max_rel_dev = std::max(out.max_rel_dev, std::abs(a - out.slip_history[i]) / std::max(1.0, std::abs(a)));
  }
  return out;
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fitted_slope: need two or more matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fitted_slope: x values are all equal");
  return sxy / sxx;
}

double oscillatory_residual(double dgamma, int delay_steps, double gamma_lo, double gamma_hi) {
  const auto run = oracles::modal_volterra(dgamma, gamma_hi, delay_steps * dgamma);
  std::vector<double> g, e;
  for (std::size_t i = 0; i < run.gamma.size(); ++i) {
    if (run.gamma[i] < gamma_lo - 1e-9) continue;
    g.push_back(run.gamma[i]);
    e.push_back(run.r[i] - oracles::modal_analytic(run.gamma[i]));
  }
  const double slope = fitted_slope(g, e);
  double mg = 0.0, me = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    mg += g[i];
    me += e[i];
  }
  mg /= static_cast<double>(g.size());
  me /= static_cast<double>(g.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(e[i] - me - slope * (g[i] - mg)));
  return worst;
}

nlohmann::json kernel_checks() {
  nlohmann::json out;
  double laplace_worst = 0.0;
  for (double p : {0.5, 1.0, 2.0}) {
    const double numeric = specfun::laplace_transform_numeric(kernel_identical, p, 500.0);
    const double closed = kernel_hat_identical(1.0, 1.0, p);
    laplace_worst = std::max(laplace_worst, std::abs(numeric - closed));
    out["laplace"].push_back({{"p", p}, {"numeric", numeric}, {"closed_form", closed}});
  }
  out["laplace_max_deviation"] = laplace_worst;

  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> rho(1000.0, 5000.0);
  std::uniform_real_distribution<double> cs(500.0, 6000.0);
  std::uniform_real_distribution<double> k(1e-4, 1e-1);
  std::uniform_real_distribution<double> t(0.0, 20.0);
  double reduction_worst = 0.0;
  double eta_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto pair = MaterialPair::identical(Material::from_density_speed(rho(rng), cs(rng)));
    const double kk = k(rng);
    const double tt = t(rng);
    const double direct = kk * pair.top.cs * kernel_identical(kk * pair.top.cs * tt);
    const double bimat = kernel_bimaterial(pair, kk, tt);
    reduction_worst = std::max(reduction_worst, std::abs(bimat - direct) / std::max(1e-300, std::abs(kk * pair.top.cs)));
    eta_worst = std::max(eta_worst, std::abs(eta(pair) - 1.0));
  }
  out["reduction_max_deviation"] = reduction_worst;
  out["reduction_eta_max_deviation"] = eta_worst;

  const auto top = Material::from_density_speed(2670.0, 3464.0);
  for (double ratio : {2.0, 0.5}) {
    out["eta_examples"].push_back({{"speed_ratio", ratio}, {"modulus_ratio", ratio},
                                   {"eta", eta(MaterialPair::from_ratios(top, ratio, ratio))}});
  }
  return out;
}

double symmetry_error(std::span<const double> field) {
  const std::size_t n = field.size();
  double worst = 0.0;
  for (std::size_t m = 0; m < n; ++m) worst = std::max(worst, std::abs(field[m] - field[(n - m) % n]));
  return worst;
}

double rupture_extent(const Grid& grid, std::span<const double> slip) {
  double extent = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (slip[m] > 0.0) extent = std::max(extent, std::abs(grid.x(m)));
  }
  return extent;
}

}  // namespace sbiem::verify
