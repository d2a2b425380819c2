#include "sbiem/convolution.hpp"

#include <algorithm>
#include <string>

#include "sbiem/errors.hpp"
#include "sbiem/parallel.hpp"

namespace sbiem {

ModeHistory::ModeHistory(std::size_t window) : window_(window) {
  if (window_ > 0) {
    re_.assign(2 * (window_ + 1), 0.0);
    im_.assign(2 * (window_ + 1), 0.0);
  }
}

void ModeHistory::push(Complex value, std::size_t step) {
  if (step != count_) {
    throw UsageError("ModeHistory::push: expected step " + std::to_string(count_) + ", got " +
                     std::to_string(step));
  }
  if (window_ == 0) {
    re_.push_back(value.real());
    im_.push_back(value.imag());
  } else {
    const std::size_t cap = window_ + 1;
    const std::size_t pos = count_ % cap;
    re_[pos] = re_[pos + cap] = value.real();
    im_[pos] = im_[pos + cap] = value.imag();
  }
  ++count_;
}

std::size_t ModeHistory::window_start(std::size_t step) const {
  if (window_ == 0 || step <= window_) return 0;
  return step - window_;
}

Complex ModeHistory::at(std::size_t m) const {
  if (m >= count_ || (window_ > 0 && m + window_ + 1 < count_)) {
    throw UsageError("ModeHistory::at: step " + std::to_string(m) + " is not retained");
  }
  const std::size_t pos = window_ == 0 ? m : m % (window_ + 1);
  return {re_[pos], im_[pos]};
}

std::span<const double> ModeHistory::real_from(std::size_t first) const {
  if (window_ == 0) return {re_.data() + first, count_ - first};
  return {re_.data() + first % (window_ + 1), count_ - first};
}

std::span<const double> ModeHistory::imag_from(std::size_t first) const {
  if (window_ == 0) return {im_.data() + first, count_ - first};
  return {im_.data() + first % (window_ + 1), count_ - first};
}

Complex convolve(const ModeHistory& history, std::span<const double> kernel_row, double dt,
                 std::size_t step, OriginWeight origin) {
  if (history.size() == 0) return {};
  const std::size_t first = history.window_start(step);
  const std::size_t last = std::min(step, history.size() - 1);
  if (first > last) return {};
  if (kernel_row.size() <= step - first) {
    throw ConfigError("convolve: kernel row holds " + std::to_string(kernel_row.size()) +
                      " lags, evaluation needs " + std::to_string(step - first + 1));
  }

  const auto re = history.real_from(first);
  const auto im = history.imag_from(first);
  const std::size_t count = last - first + 1;
  const double* lag = kernel_row.data() + (step - first);

  double sum_re = 0.0;
  double sum_im = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = *(lag - i);
    sum_re += w * re[i];
    sum_im += w * im[i];
  }

  // End corrections: the trapezoid halves both endpoints.
  const double start_weight = first == 0 && origin == OriginWeight::impulse ? 1.0 : 0.5;
  sum_re -= (1.0 - start_weight) * lag[0] * re[0];
  sum_im -= (1.0 - start_weight) * lag[0] * im[0];
  if (last == step && count > 1) {
    sum_re -= 0.5 * kernel_row[0] * re[count - 1];
    sum_im -= 0.5 * kernel_row[0] * im[count - 1];
  }
  return {dt * sum_re, dt * sum_im};
}

std::size_t convolve_cost(const ModeHistory& history, std::size_t step) {
  if (history.size() == 0) return 0;
  const std::size_t first = history.window_start(step);
  const std::size_t last = std::min(step, history.size() - 1);
  return first > last ? 0 : last - first + 1;
}

std::size_t convolve_all(std::span<const ModeHistory> histories, const KernelTable& table,
                         std::size_t step, std::span<Complex> out, unsigned threads,
                         OriginWeight origin) {
  if (histories.size() != table.modes() || out.size() != table.modes()) {
    throw ShapeError("convolve_all: histories, kernel table and output disagree on mode count");
  }
  parallel_for(table.modes(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = table.k_abs(i) == 0.0 ? Complex{}
                                     : convolve(histories[i], table.row(i), table.dt(), step, origin);
    }
  });
  std::size_t cost = 0;
  for (std::size_t i = 0; i < table.modes(); ++i) {
    if (table.k_abs(i) != 0.0) cost += convolve_cost(histories[i], step);
  }
  return cost;
}

}  // namespace sbiem
