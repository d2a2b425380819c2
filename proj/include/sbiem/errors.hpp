#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbiem {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Field length does not match the grid.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Spectral field is not Hermitian-symmetric within tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// API called out of order (e.g. two pushes for the same time step).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or iteration failed to produce a finite result.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite field value produced during time stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : Error("diverged at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace sbiem
