#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sbiem/grid.hpp"
#include "sbiem/kernels.hpp"

namespace sbiem {

/// Append-only history of one mode's stress amplitude T(k, t_m), one entry
/// per time step. With a finite window only the most recent `window`
/// entries are kept, in a doubly written ring so the retained span is
/// always contiguous.
class ModeHistory {
 public:
  /// window == 0 keeps every entry.
  explicit ModeHistory(std::size_t window = 0);

  /// Appends the value for time step `step`, which must equal size().
  /// Throws UsageError otherwise (e.g. a second push for the same step).
  void push(Complex value, std::size_t step);

  /// Number of entries pushed so far (the next expected step).
  std::size_t size() const { return count_; }
  std::size_t window() const { return window_; }

  /// First step index that contributes when evaluating at `step`.
  std::size_t window_start(std::size_t step) const;

  /// Entry for step m; m must lie in the retained span.
  Complex at(std::size_t m) const;

  /// Contiguous real/imaginary parts for steps [first, size()).
  std::span<const double> real_from(std::size_t first) const;
  std::span<const double> imag_from(std::size_t first) const;

 private:
  std::size_t window_;
  std::size_t count_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Weight of the step-0 sample. Trapezoid for sampled histories; an
/// impulse that carries its full time integral in the first sample uses 1.
enum class OriginWeight { trapezoid, impulse };

/// dt * sum_m w_m kernel_row[step - m] T_m over the retained span, with
/// trapezoid weights (1/2 at both ends). Entries not yet pushed (the
/// current step) contribute nothing, which is exact because the kernel
/// vanishes at zero lag. Throws ConfigError if the row is too short.
Complex convolve(const ModeHistory& history, std::span<const double> kernel_row, double dt,
                 std::size_t step, OriginWeight origin = OriginWeight::trapezoid);

/// Multiply-add count of one convolve() call, for the cost counters.
std::size_t convolve_cost(const ModeHistory& history, std::size_t step);

/// Applies convolve to every mode of `table`; mode i uses histories[i].
/// Modes are split across `threads` workers. Returns the multiply-add
/// count.
std::size_t convolve_all(std::span<const ModeHistory> histories, const KernelTable& table,
                         std::size_t step, std::span<Complex> out, unsigned threads = 1,
                         OriginWeight origin = OriginWeight::trapezoid);

}  // namespace sbiem
