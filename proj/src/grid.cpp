#include "sbiem/grid.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "sbiem/errors.hpp"

namespace sbiem {

Grid::Grid(double length, std::size_t elements) : length_(length), size_(elements) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid length must be positive");
  if (elements < 2 || !std::has_single_bit(elements)) {
    throw ConfigError("element count must be a power of two >= 2, got " + std::to_string(elements));
  }
  dx_ = length_ / static_cast<double>(size_);
}

double Grid::x(std::size_t m) const { return -0.5 * length_ + static_cast<double>(m) * dx_; }

int Grid::mode_index(std::size_t i) const {
  const auto n = static_cast<long>(size_);
  const auto j = static_cast<long>(i);
  return static_cast<int>(j < n / 2 ? j : j - n);
}

double Grid::k(std::size_t i) const { return 2.0 * std::numbers::pi * mode_index(i) / length_; }

std::vector<double> Grid::x_centers() const {
  std::vector<double> out(size_);
  for (std::size_t m = 0; m < size_; ++m) out[m] = x(m);
  return out;
}

std::vector<double> Grid::k_values() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = k(i);
  return out;
}

std::vector<double> Grid::half_spectrum_k_abs() const {
  std::vector<double> out(size_ / 2 + 1);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / length_;
  }
  return out;
}

std::size_t Grid::nearest_sample(double pos) const {
  const double shifted = (pos + 0.5 * length_) / dx_;
  auto m = static_cast<long>(std::llround(shifted)) % static_cast<long>(size_);
  if (m < 0) m += static_cast<long>(size_);
  return static_cast<std::size_t>(m);
}

namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralTransform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    const int size = static_cast<int>(n);
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c_1d(size, real, cplx, flags);
    c2r = fftw_plan_dft_c2r_1d(size, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

SpectralTransform::SpectralTransform(const Grid& grid)
    : size_(grid.size()), plans_(std::make_unique<Plans>(grid.size())) {}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

void SpectralTransform::forward_half(std::span<const double> field, std::span<Complex> amps) const {
  if (field.size() != size_) {
    throw ShapeError("forward: field has " + std::to_string(field.size()) + " samples, grid has " +
                     std::to_string(size_));
  }
  if (amps.size() != half_size()) throw ShapeError("forward: half spectrum has wrong length");
  // r2c out-of-place leaves its input untouched.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(field.data()),
                       reinterpret_cast<fftw_complex*>(amps.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& a : amps) a *= scale;
  // DC and Nyquist are real for a real field.
  amps.front().imag(0.0);
  amps.back().imag(0.0);
}

void SpectralTransform::inverse_half(std::span<const Complex> amps, std::span<double> field) const {
  if (amps.size() != half_size()) throw ShapeError("inverse: half spectrum has wrong length");
  if (field.size() != size_) throw ShapeError("inverse: output field has wrong length");
  // c2r overwrites its input.
  std::vector<Complex> scratch(amps.begin(), amps.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), field.data());
}

SpectralField SpectralTransform::forward(std::span<const double> field) const {
  std::vector<Complex> half(half_size());
  forward_half(field, half);
  SpectralField amps(size_);
  // exp(-i k_j x_0) = (-1)^j with x_0 = -L/2.
  for (std::size_t i = 0; i <= size_ / 2; ++i) {
    amps[i] = i % 2 == 0 ? half[i] : -half[i];
  }
  for (std::size_t i = size_ / 2 + 1; i < size_; ++i) amps[i] = std::conj(amps[size_ - i]);
  return amps;
}

SpatialField SpectralTransform::inverse(std::span<const Complex> amps) const {
  if (amps.size() != size_) {
    throw ShapeError("inverse: spectrum has " + std::to_string(amps.size()) + " modes, grid has " +
                     std::to_string(size_));
  }
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    worst = std::max(worst, std::abs(amps[(size_ - i) % size_] - std::conj(amps[i])));
  }
  if (worst > 1e-10 * std::sqrt(norm2)) {
    throw SymmetryError("inverse: spectrum is not Hermitian (deviation " + std::to_string(worst) + ")");
  }
  std::vector<Complex> half(half_size());
  for (std::size_t i = 0; i <= size_ / 2; ++i) {
    const Complex sym = 0.5 * (amps[i] + std::conj(amps[(size_ - i) % size_]));
    half[i] = i % 2 == 0 ? sym : -sym;
  }
  half.front().imag(0.0);
  half.back().imag(0.0);
  SpatialField out(size_);
  inverse_half(half, out);
  return out;
}

}  // namespace sbiem
