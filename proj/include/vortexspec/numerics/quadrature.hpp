#pragma once

#include <functional>
#include <span>

#include "vortexspec/common.hpp"

namespace vortexspec::num {

enum class QuadWeight { unit, radial };

/// Composite Simpson on a (possibly non-uniform) grid; odd interval counts
/// are closed with a quadratic fitted through the last three nodes.
/// weight == radial integrates f(x) x dx instead of f(x) dx.
double quad_weighted(std::span<const double> grid, std::span<const double> values,
                     QuadWeight weight = QuadWeight::unit);
Complex quad_weighted(std::span<const double> grid,
                      std::span<const Complex> values,
                      QuadWeight weight = QuadWeight::unit);

/// Classic adaptive Simpson for callables.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

}  // namespace vortexspec::num
