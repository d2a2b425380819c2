#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sbiem {

/// Isotropic elastic half-plane. Construct through the factories so that
/// cs == sqrt(mu / rho) holds.
struct Material {
  double mu = 0.0;   // shear modulus, Pa
  double rho = 0.0;  // density, kg/m^3
  double cs = 0.0;   // shear wave speed, m/s

  static Material from_modulus_density(double mu, double rho);
  static Material from_density_speed(double rho, double cs);

  /// Throws ConfigError unless mu, rho > 0 and cs matches sqrt(mu/rho).
  void validate() const;

  /// mu / (2 cs): the radiation-damping coefficient of one half-plane pair.
  double radiation_coefficient() const { return mu / (2.0 * cs); }

  bool operator==(const Material&) const = default;
};

/// Half-planes above (x2 > 0) and below (x2 < 0) the interface.
struct MaterialPair {
  Material top;
  Material bottom;

  static MaterialPair identical(const Material& m) { return {m, m}; }

  /// Bottom half-plane from ratios c's/cs and mu'/mu relative to `top`.
  static MaterialPair from_ratios(const Material& top, double speed_ratio, double modulus_ratio);

  bool is_identical() const { return top == bottom; }
  double max_speed() const;
  double min_speed() const;
};

struct KernelConfig {
  /// Nondimensional lag |k| cs_min t beyond which history is dropped.
  double truncation_gamma = std::numeric_limits<double>::infinity();
  /// Convolution delay d = delay_steps * dt.
  int delay_steps = 0;

  void validate() const;
  bool truncated() const { return std::isfinite(truncation_gamma); }
};

/// C(gamma) = J1(gamma). Throws DomainError for gamma < 0.
double kernel_identical(double gamma);

/// K(k, t) = (|k|/2) [cs J1(|k| cs t) + (c's/cs)(mu/mu') c's J1(|k| c's t)], 1/s.
double kernel_bimaterial(const MaterialPair& pair, double k_abs, double t);

/// eta = (1 + (c's/cs)(mu/mu')) / 2.
double eta(const MaterialPair& pair);

/// Laplace-domain kernel 1 - 1/sqrt(1 + k^2 cs^2 / p^2). Throws DomainError
/// for p <= 0.
double kernel_hat_identical(double k_abs, double cs, double p);

enum class KernelModel { identical, bimaterial };

/// Per-mode kernel values on the step lattice. Row j of mode i holds
/// K(k_i, (j - delay) dt), zero for j <= delay, so that the current and
/// delayed samples never enter the sum. Rows are truncated to the retained
/// window when truncation is enabled. Immutable after construction.
class KernelTable {
 public:
  KernelTable(KernelModel model, const MaterialPair& pair, std::span<const double> k_abs, double dt,
              std::size_t steps, const KernelConfig& config);

  std::size_t modes() const { return k_abs_.size(); }
  std::span<const double> row(std::size_t mode) const;
  /// Number of past steps retained for a mode; 0 means unbounded.
  std::size_t window(std::size_t mode) const { return windows_[mode]; }
  double k_abs(std::size_t mode) const { return k_abs_[mode]; }
  double dt() const { return dt_; }
  const KernelConfig& config() const { return config_; }

 private:
  std::vector<double> k_abs_;
  std::vector<std::size_t> windows_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
  double dt_;
  KernelConfig config_;
};

}  // namespace sbiem
