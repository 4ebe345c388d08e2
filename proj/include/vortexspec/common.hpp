#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vortexspec {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Bad user input: unknown kinds, out-of-range parameters, malformed files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (non-convergence, singularity, divergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration step size underflowed; carries the radius where it happened.
class StepUnderflowError : public NumericalError {
 public:
  StepUnderflowError(const std::string& what, double where)
      : NumericalError(what), failure_radius(where) {}
  double failure_radius;
};

}  // namespace vortexspec
