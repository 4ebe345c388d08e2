#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::num {

inline constexpr int kMaxOdeDim = 6;

/// First-order system y' = f(x, y) with complex-valued state.
/// Singular endpoints are the caller's business (Frobenius starts etc.);
/// the rhs must be finite on the interval actually integrated.
struct OdeSystem {
  int dimension = 2;
  // rhs(x, y, dydx): reads y[0..dim), writes dydx[0..dim)
  std::function<void(double, const Complex*, Complex*)> rhs;
  double stiffness_hint = 0.0;  // informational only
};

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  double initial_step = 0.0;  // 0 = choose automatically
  double max_step = 0.0;      // 0 = unrestricted
  double fixed_step = 0.0;    // >0 disables adaptivity (testing hook)
  bool keep_trace = false;
  long max_steps = 4'000'000;
};

struct TracePoint {
  double x;
  std::vector<Complex> y;
};

struct IntegrationResult {
  std::vector<Complex> y;          // state at the end point
  std::vector<TracePoint> trace;   // accepted steps, if requested
  long accepted = 0;
  long rejected = 0;
};

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince). Integrates from
/// x0 to x1 (either direction). Throws StepUnderflowError if the step
/// size collapses, carrying the radius where it happened.
IntegrationResult integrate(const OdeSystem& system, double x0, double x1,
                            std::span<const Complex> y0,
                            const IntegrationOptions& opts = {});

}  // namespace vortexspec::num
