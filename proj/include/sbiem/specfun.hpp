#pragma once

#include <functional>

namespace sbiem::specfun {

/// Bessel function of the first kind, order 0. Throws DomainError on
/// non-finite input.
double bessel_j0(double x);

/// Bessel function of the first kind, order 1 (odd in x).
double bessel_j1(double x);

/// Struve functions H0 and H1, defined for x >= 0 only.
double struve_h0(double x);
double struve_h1(double x);

/// Returns the integral of f(t) exp(-p t) over [0, upper] by adaptive
/// Gauss-Kronrod quadrature on unit-sized panels. `upper` may be +inf, in
/// which case the range is cut where exp(-p t) drops below 1e-18 and the
/// tail is required to be decaying.
///
/// Throws DomainError for p <= 0 or upper <= 0, NumericError when the
/// integrand produces non-finite values or does not decay.
double laplace_transform_numeric(const std::function<double(double)>& f, double p, double upper);

/// Adaptive quadrature of f over [a, b], split into panels no wider than
/// `panel`. Shared by the oracles.
double integrate(const std::function<double(double)>& f, double a, double b, double panel = 2.0);

}  // namespace sbiem::specfun
