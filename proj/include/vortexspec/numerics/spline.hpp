#pragma once

#include <limits>
#include <span>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::num {

/// Cubic spline interpolant with optional clamped end slopes.
/// Evaluation outside [x_front, x_back] extrapolates the end cubic.
class CubicSpline {
 public:
  CubicSpline() = default;
  // NaN end slope = natural condition at that end.
  CubicSpline(std::span<const double> x, std::span<const double> y,
              double slope_left = std::numeric_limits<double>::quiet_NaN(),
              double slope_right = std::numeric_limits<double>::quiet_NaN());

  double operator()(double x) const;
  double derivative(double x) const;
  /// Exact integral of the interpolant times a power-law weight x^pw
  /// from the first node to x (pw = 0 or 1).
  double integral_weighted(double x, int pw) const;

  const std::vector<double>& nodes() const { return x_; }

 private:
  size_t segment(double x) const;
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at nodes
};

/// Fourth-order finite-difference derivative of tabulated values on an
/// arbitrary strictly increasing grid (5-point Fornberg stencils, one-sided
/// at the ends).
std::vector<double> fd_derivative_4(std::span<const double> x,
                                    std::span<const double> y);

}  // namespace vortexspec::num
