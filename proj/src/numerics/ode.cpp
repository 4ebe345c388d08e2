#include "vortexspec/numerics/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace vortexspec::num {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order weights for the error estimate
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

using StateBuf = std::array<Complex, kMaxOdeDim>;

}  // namespace

IntegrationResult integrate(const OdeSystem& system, double x0, double x1,
                            std::span<const Complex> y0,
                            const IntegrationOptions& opts) {
  const int n = system.dimension;
  if (n < 1 || n > kMaxOdeDim)
    throw ValidationError("integrate: unsupported dimension");
  if (static_cast<int>(y0.size()) != n)
    throw ValidationError("integrate: initial state size mismatch");
  if (x0 == x1) throw ValidationError("integrate: empty interval");

  const double dir = (x1 > x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  const bool fixed = opts.fixed_step > 0.0;

  double h = fixed ? opts.fixed_step
                   : (opts.initial_step > 0.0 ? opts.initial_step : span / 256);
  if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
  h = std::min(h, span);

  IntegrationResult out;
  StateBuf y{}, ynew{}, ytmp{}, yerr{};
  StateBuf k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
  std::copy(y0.begin(), y0.end(), y.begin());

  double x = x0;
  if (opts.keep_trace)
    out.trace.push_back({x, std::vector<Complex>(y.begin(), y.begin() + n)});

  const double hmin = 1e-15 * std::max({std::abs(x0), std::abs(x1), 1.0});
  bool have_k1 = false;

  while (dir * (x1 - x) > 0.0) {
    if (out.accepted + out.rejected > opts.max_steps)
      throw NumericalError("integrate: step budget exceeded");
    double hstep = std::min(h, std::abs(x1 - x));
    const double hs = dir * hstep;

    if (!have_k1) system.rhs(x, y.data(), k1.data());
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a21 * k1[i]);
    system.rhs(x + c2 * hs, ytmp.data(), k2.data());
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    system.rhs(x + c3 * hs, ytmp.data(), k3.data());
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    system.rhs(x + c4 * hs, ytmp.data(), k4.data());
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    system.rhs(x + c5 * hs, ytmp.data(), k5.data());
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                             a64 * k4[i] + a65 * k5[i]);
    system.rhs(x + hs, ytmp.data(), k6.data());
    for (int i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                             b6 * k6[i]);
    system.rhs(x + hs, ynew.data(), k7.data());

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      yerr[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opts.abs_tol +
          opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(yerr[i]) / scale);
    }

    if (fixed || err <= 1.0) {
      x += hs;
      y = ynew;
      k1 = k7;  // FSAL
      have_k1 = true;
      ++out.accepted;
      if (opts.keep_trace)
        out.trace.push_back({x, std::vector<Complex>(y.begin(), y.begin() + n)});
    } else {
      ++out.rejected;
      have_k1 = true;  // k1 still valid at unchanged x
    }

    if (!fixed) {
      const double fac =
          std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
      h = hstep * fac;
      if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
      if (h < hmin)
        throw StepUnderflowError("integrate: step underflow (singularity?)", x);
    }
  }

  out.y.assign(y.begin(), y.begin() + n);
  return out;
}

}  // namespace vortexspec::num
