#pragma once

#include <stdexcept>
#include <string>

namespace ctorque {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. eps < 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ideal plasma (no restoring force, no damping) evaluated at zero frequency.
class StaticDivergenceError : public Error {
 public:
  using Error::Error;
};

/// Tabulated data queried outside its sampled range.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Torque integrand denominator below the guard; only ideal |r| = 1 closures reach it.
class SingularDenominatorError : public Error {
 public:
  using Error::Error;
};

/// Closed form evaluated at a genuine (non-removable) singularity.
class SingularArgumentError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double value, double error_estimate)
      : Error(what), value_(value), error_estimate_(error_estimate) {}
  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// A 2x2 bracket in the Green's-function construction is not invertible.
class SingularBracketError : public Error {
 public:
  using Error::Error;
};

/// Proportionality constant between oracle kernel and integrand is not universal.
class InconsistentConstantError : public Error {
 public:
  using Error::Error;
};

/// SI conversion requested without the scale it needs.
class MissingScaleError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctorque
