#include "sbiem/specfun.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sbiem/errors.hpp"

namespace sbiem::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Crossovers: the power series loses about log10(e^x / x) digits to
// cancellation, and the Hankel expansion's smallest term is ~exp(-2x), so
// neither alone reaches 1e-13 near x = 12. Miller's backward recurrence
// fills the band in between.
constexpr double kSeriesMax = 8.0;
constexpr double kAsymptoticMin = 25.0;

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": non-finite argument");
  }
}

// Sum_k (-1)^k (x^2/4)^k / (k! (k+order)!), times (x/2)^order.
double bessel_series(int order, double x) {
  const double q = 0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's algorithm, normalised with J0 + 2 sum J_2k = 1. x > 0.
void bessel_miller(double x, double& j0, double& j1) {
  int start = static_cast<int>(x + 12.0 * std::cbrt(x) + 30.0);
  start += start % 2;
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  double at0 = 0.0;
  double at1 = 0.0;
  for (int n = start; n > 0; --n) {
    const double prev = 2.0 * n / x * cur - next;
    next = cur;
    cur = prev;
    // cur now holds the unnormalised J_{n-1}.
    if (n - 1 == 1) at1 = cur;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      at1 *= 1e-250;
    }
  }
  at0 = cur;
  norm += at0;
  j0 = at0 / norm;
  j1 = at1 / norm;
}

// Hankel expansion J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi).
double bessel_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // k odd feeds Q, k even feeds P, with alternating signs in each.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (last < 1e-17) break;
  }
  // chi = x - (2 nu + 1) pi / 4, expanded so that no large argument is
  // shifted by an inexact constant.
  const double c = std::cos(x);
  const double s = std::sin(x);
  double cos_chi;
  double sin_chi;
  if (order == 0) {
    cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
    sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  } else {
    cos_chi = (s - c) * std::numbers::sqrt2 / 2.0;
    sin_chi = -(c + s) * std::numbers::sqrt2 / 2.0;
  }
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double struve_series(int order, double x) {
  // First term (x/2)^(nu+1) / (Gamma(3/2) Gamma(nu + 3/2)).
  const double half = 0.5 * x;
  double term = order == 0 ? half / (kPi / 4.0) : half * half / (3.0 * kPi / 8.0);
  double sum = term;
  const double q = half * half;
  for (int k = 0; k < 200; ++k) {
    term *= -q / ((k + 1.5) * (k + order + 1.5));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// H_nu(x) = 2 (x/2)^nu / (sqrt(pi) Gamma(nu + 1/2)) int_0^1 (1-t^2)^(nu-1/2) sin(x t) dt,
// rewritten with t = cos(theta) so both orders have a smooth integrand.
double struve_integral(int order, double x) {
  const auto integrand = [x, order](double theta) {
    const double s = std::sin(x * std::cos(theta));
    if (order == 0) return s;
    const double st = std::sin(theta);
    return s * st * st;
  };
  const int panels = static_cast<int>(std::ceil(x / 6.0)) + 2;
  const double width = 0.5 * kPi / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += boost::math::quadrature::gauss<double, 30>::integrate(integrand, i * width, (i + 1) * width);
  }
  return order == 0 ? 2.0 / kPi * sum : 2.0 * x / kPi * sum;
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  const double ax = std::abs(x);
  if (ax <= kSeriesMax) return bessel_series(0, ax);
  if (ax >= kAsymptoticMin) return bessel_asymptotic(0, ax);
  double j0;
  double j1;
  bessel_miller(ax, j0, j1);
  return j0;
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double ax = std::abs(x);
  double value;
  if (ax <= kSeriesMax) {
    value = bessel_series(1, ax);
  } else if (ax >= kAsymptoticMin) {
    value = bessel_asymptotic(1, ax);
  } else {
    double j0;
    bessel_miller(ax, j0, value);
  }
  return x < 0.0 ? -value : value;
}

double struve_h0(double x) {
  require_finite(x, "struve_h0");
  if (x < 0.0) throw DomainError("struve_h0: negative argument");
  return x <= kSeriesMax ? struve_series(0, x) : struve_integral(0, x);
}

double struve_h1(double x) {
  require_finite(x, "struve_h1");
  if (x < 0.0) throw DomainError("struve_h1: negative argument");
  return x <= kSeriesMax ? struve_series(1, x) : struve_integral(1, x);
}

double integrate(const std::function<double(double)>& f, double a, double b, double panel) {
  if (!(b > a)) return 0.0;
  const auto count = static_cast<long>(std::ceil((b - a) / panel));
  const double width = (b - a) / static_cast<double>(count);
  double sum = 0.0;
  for (long i = 0; i < count; ++i) {
    const double lo = a + static_cast<double>(i) * width;
    const double hi = i + 1 == count ? b : lo + width;
    double err = 0.0;
    const double part =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, 1e-14, &err);
    if (!std::isfinite(part)) throw NumericError("integrate: non-finite integrand");
    sum += part;
  }
  return sum;
}

double laplace_transform_numeric(const std::function<double(double)>& f, double p, double upper) {
  if (!(p > 0.0)) throw DomainError("laplace_transform_numeric: p must be positive");
  if (!(upper > 0.0)) throw DomainError("laplace_transform_numeric: upper must be positive");
  const bool unbounded = std::isinf(upper);
  const double end = unbounded ? 42.0 / p : upper;
  const auto integrand = [&f, p](double t) { return f(t) * std::exp(-p * t); };

  constexpr double kPanel = 1.0;
  const auto count = static_cast<long>(std::ceil(end / kPanel));
  const double width = end / static_cast<double>(count);
  double sum = 0.0;
  double tail = 0.0;
  for (long i = 0; i < count; ++i) {
    const double lo = static_cast<double>(i) * width;
    const double hi = i + 1 == count ? end : lo + width;
    double err = 0.0;
    const double part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 12, 1e-14, &err);
    if (!std::isfinite(part)) {
      throw NumericError("laplace_transform_numeric: non-finite integrand near t = " + std::to_string(lo));
    }
    sum += part;
    tail = std::abs(part);
  }
  if (unbounded && tail > 1e-10 * std::max(1.0, std::abs(sum))) {
    throw NumericError("laplace_transform_numeric: integrand does not decay");
  }
  return sum;
}

}  // namespace sbiem::specfun
