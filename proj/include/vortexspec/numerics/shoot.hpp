#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vortexspec/numerics/ode.hpp"

namespace vortexspec::num {

/// Self-adjoint-form problem  -(A u~)' + B u = 0,  u~ := u' + u/x,
/// integrated as the first-order system in (u, q) with flux q = A u~.
struct SecondOrderFluxProblem {
  std::function<double(double)> A;
  std::function<Complex(double)> B;
};

OdeSystem flux_system(const SecondOrderFluxProblem& prob);

struct ShotTraces {
  std::vector<TracePoint> left;   // r0 -> r_mid, increasing
  std::vector<TracePoint> right;  // R -> r_mid, decreasing x order
};

struct TwoSidedSpec {
  double r0, r_mid, R;
  std::vector<double> interfaces;  // coefficient jumps inside (r0, R)
  std::vector<Complex> left_init, right_init;
  // mismatch(y_left, y_right) at r_mid; zero iff proportional
  std::function<Complex(std::span<const Complex>, std::span<const Complex>)>
      mismatch;
  bool normalize = true;  // divide by the product of state magnitudes
};

/// Integrates from both ends to r_mid (splitting at interfaces) and returns
/// the matching mismatch. Zeros of the mismatch in the problem's hidden
/// parameter are the eigenvalues.
Complex shoot_two_sided(const OdeSystem& system, const TwoSidedSpec& spec,
                        const IntegrationOptions& opts = {},
                        ShotTraces* traces = nullptr);

}  // namespace vortexspec::num
