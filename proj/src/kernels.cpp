#include "sbiem/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "sbiem/errors.hpp"
#include "sbiem/specfun.hpp"

namespace sbiem {

Material Material::from_modulus_density(double mu, double rho) {
  Material m{mu, rho, std::sqrt(mu / rho)};
  m.validate();
  return m;
}

Material Material::from_density_speed(double rho, double cs) {
  Material m{rho * cs * cs, rho, cs};
  m.validate();
  return m;
}

void Material::validate() const {
  if (!(mu > 0.0) || !(rho > 0.0) || !(cs > 0.0) || !std::isfinite(mu) || !std::isfinite(rho)) {
    throw ConfigError("material requires mu > 0, rho > 0 and cs > 0");
  }
  const double expected = std::sqrt(mu / rho);
  if (std::abs(cs - expected) > 1e-12 * expected) {
    throw ConfigError("material shear wave speed is inconsistent with sqrt(mu/rho)");
  }
}

MaterialPair MaterialPair::from_ratios(const Material& top, double speed_ratio, double modulus_ratio) {
  if (!(speed_ratio > 0.0) || !(modulus_ratio > 0.0)) {
    throw ConfigError("material ratios must be positive");
  }
  const double cs = top.cs * speed_ratio;
  const double mu = top.mu * modulus_ratio;
  Material bottom{mu, mu / (cs * cs), cs};
  bottom.validate();
  return {top, bottom};
}

double MaterialPair::max_speed() const { return std::max(top.cs, bottom.cs); }
double MaterialPair::min_speed() const { return std::min(top.cs, bottom.cs); }

void KernelConfig::validate() const {
  if (!(truncation_gamma > 0.0)) throw ConfigError("truncation_gamma must be positive");
  if (delay_steps < 0) throw ConfigError("delay_steps must be non-negative");
}

double kernel_identical(double gamma) {
  if (gamma < 0.0) throw DomainError("kernel_identical: negative gamma");
  return specfun::bessel_j1(gamma);
}

double kernel_bimaterial(const MaterialPair& pair, double k_abs, double t) {
  if (k_abs < 0.0 || t < 0.0) throw DomainError("kernel_bimaterial: negative argument");
  const double cs = pair.top.cs;
  const double cs2 = pair.bottom.cs;
  const double weight = (cs2 / cs) * (pair.top.mu / pair.bottom.mu);
  return 0.5 * k_abs *
         (cs * specfun::bessel_j1(k_abs * cs * t) + weight * cs2 * specfun::bessel_j1(k_abs * cs2 * t));
}

double eta(const MaterialPair& pair) {
  return 0.5 * (1.0 + (pair.bottom.cs / pair.top.cs) * (pair.top.mu / pair.bottom.mu));
}

double kernel_hat_identical(double k_abs, double cs, double p) {
  if (!(p > 0.0)) throw DomainError("kernel_hat_identical: p must be positive");
  const double ratio = k_abs * cs / p;
  return 1.0 - 1.0 / std::sqrt(1.0 + ratio * ratio);
}

KernelTable::KernelTable(KernelModel model, const MaterialPair& pair, std::span<const double> k_abs,
                         double dt, std::size_t steps, const KernelConfig& config)
    : k_abs_(k_abs.begin(), k_abs.end()), dt_(dt), config_(config) {
  config.validate();
  if (!(dt > 0.0)) throw ConfigError("kernel table: dt must be positive");
  if (model == KernelModel::identical && !pair.is_identical()) {
    throw ConfigError("kernel table: identical-material kernel requested for dissimilar materials");
  }
  const std::size_t full = steps + 1;
  const auto delay = static_cast<std::size_t>(config.delay_steps);
  const double cs = pair.top.cs;

  windows_.resize(k_abs_.size(), 0);
  offsets_.resize(k_abs_.size() + 1, 0);
  for (std::size_t i = 0; i < k_abs_.size(); ++i) {
    std::size_t length = full;
    if (config.truncated() && k_abs_[i] > 0.0) {
      const double span = config.truncation_gamma / (k_abs_[i] * pair.min_speed() * dt);
      windows_[i] = static_cast<std::size_t>(std::ceil(std::min(span, 1e15)));
      length = std::min(full, windows_[i] + 1);
    }
    offsets_[i + 1] = offsets_[i] + length;
  }

  values_.assign(offsets_.back(), 0.0);
  for (std::size_t i = 0; i < k_abs_.size(); ++i) {
    const double k = k_abs_[i];
    if (k == 0.0) continue;
    double* row = values_.data() + offsets_[i];
    const std::size_t length = offsets_[i + 1] - offsets_[i];
    for (std::size_t j = delay + 1; j < length; ++j) {
      const double t = static_cast<double>(j - delay) * dt;
      row[j] = model == KernelModel::identical ? k * cs * kernel_identical(k * cs * t)
                                               : kernel_bimaterial(pair, k, t);
    }
  }
}

std::span<const double> KernelTable::row(std::size_t mode) const {
  return {values_.data() + offsets_[mode], offsets_[mode + 1] - offsets_[mode]};
}

}  // namespace sbiem
