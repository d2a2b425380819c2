#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sbiem {

using Complex = std::complex<double>;

/// N real samples of an interface field (slip, slip rate, stress).
using SpatialField = std::vector<double>;

/// N complex mode amplitudes, ordered like Grid::k_values().
using SpectralField = std::vector<Complex>;

/// Uniform periodic discretization of an interface of length L into N
/// elements. Sample m sits at x_m = -L/2 + m dx, so x = 0 is sample N/2 and
/// the reflection x -> -x maps sample m onto sample (N - m) mod N.
class Grid {
 public:
  Grid(double length, std::size_t elements);

  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double dx() const { return dx_; }

  double x(std::size_t m) const;
  /// Wavenumber of storage slot i (transform ordering: j = i for i < N/2,
  /// j = i - N otherwise), k_j = 2 pi j / L.
  double k(std::size_t i) const;
  int mode_index(std::size_t i) const;

  std::vector<double> x_centers() const;
  std::vector<double> k_values() const;

  /// |k| for the N/2 + 1 non-negative modes j = 0..N/2 (Nyquist last).
  std::vector<double> half_spectrum_k_abs() const;

  /// Sample nearest to position x, wrapped periodically.
  std::size_t nearest_sample(double x) const;

 private:
  double length_;
  std::size_t size_;
  double dx_;
};

/// Forward/inverse transforms between real fields on a Grid and their
/// Fourier-series coefficients amps(k_j) = (1/N) sum_m f_m exp(-i k_j x_m).
///
/// The full-spectrum methods return all N modes in Grid ordering. The
/// half-spectrum methods work on modes j = 0..N/2 and omit the x_0 phase,
/// which is irrelevant to per-mode linear operations; the engine uses them.
///
/// All methods are const and may run concurrently on distinct buffers.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& grid);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  std::size_t size() const { return size_; }
  std::size_t half_size() const { return size_ / 2 + 1; }

  SpectralField forward(std::span<const double> field) const;

  /// Throws SymmetryError if amps(-k) differs from conj(amps(k)) by more than
  /// 1e-10 of the spectrum's norm.
  SpatialField inverse(std::span<const Complex> amps) const;

  void forward_half(std::span<const double> field, std::span<Complex> amps) const;
  void inverse_half(std::span<const Complex> amps, std::span<double> field) const;

 private:
  struct Plans;
  std::size_t size_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace sbiem
