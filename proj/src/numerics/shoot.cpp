#include "vortexspec/numerics/shoot.hpp"

#include <algorithm>
#include <cmath>

namespace vortexspec::num {

OdeSystem flux_system(const SecondOrderFluxProblem& prob) {
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [A = prob.A, B = prob.B](double r, const Complex* y, Complex* dy) {
    dy[0] = y[1] / A(r) - y[0] / r;  // u' = q/A - u/r
    dy[1] = B(r) * y[0];             // q' = B u
  };
  return sys;
}

namespace {

// Integrate over [a, b] splitting at any interface radii strictly inside;
// the state is carried across each interface (continuity of the chosen
// variables is the caller's responsibility).
std::vector<Complex> integrate_split(const OdeSystem& sys, double a, double b,
                                     std::span<const Complex> y0,
                                     std::span<const double> interfaces,
                                     const IntegrationOptions& opts,
                                     std::vector<TracePoint>* trace) {
  std::vector<double> cuts;
  const double lo = std::min(a, b), hi = std::max(a, b);
  for (double t : interfaces)
    if (t > lo && t < hi) cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  if (a > b) std::reverse(cuts.begin(), cuts.end());

  std::vector<Complex> y(y0.begin(), y0.end());
  double x = a;
  auto run = [&](double to) {
    IntegrationOptions o = opts;
    o.keep_trace = trace != nullptr;
    auto res = integrate(sys, x, to, y, o);
    y = res.y;
    if (trace)
      trace->insert(trace->end(), res.trace.begin(), res.trace.end());
    x = to;
  };
  for (double c : cuts) {
    const double eps = 1e-12 * std::max(1.0, std::abs(c));
    const double before = (a < b) ? c - eps : c + eps;
    run(before);
    x = (a < b) ? c + eps : c - eps;  // hop over the jump, state continuous
  }
  run(b);
  return y;
}

double state_mag(std::span<const Complex> y) {
  double m = 0.0;
  for (const auto& v : y) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Complex shoot_two_sided(const OdeSystem& system, const TwoSidedSpec& spec,
                        const IntegrationOptions& opts, ShotTraces* traces) {
  if (!(spec.r0 < spec.r_mid && spec.r_mid < spec.R))
    throw ValidationError("shoot_two_sided: need r0 < r_mid < R");
  auto yl = integrate_split(system, spec.r0, spec.r_mid, spec.left_init,
                            spec.interfaces, opts,
                            traces ? &traces->left : nullptr);
  auto yr = integrate_split(system, spec.R, spec.r_mid, spec.right_init,
                            spec.interfaces, opts,
                            traces ? &traces->right : nullptr);
  Complex mm = spec.mismatch(yl, yr);
  if (spec.normalize) {
    const double denom = state_mag(yl) * state_mag(yr);
    if (denom > 0.0) mm /= denom;
  }
  return mm;
}

}  // namespace vortexspec::num
