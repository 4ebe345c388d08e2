#include "vortexspec/numerics/quadrature.hpp"

#include <cmath>
#include <vector>

namespace vortexspec::num {

namespace {

// Integral over [x0, x2] of the quadratic through (x0,f0),(x1,f1),(x2,f2).
template <class T>
T simpson_cell(double x0, double x1, double x2, T f0, T f1, T f2) {
  const double h0 = x1 - x0, h1 = x2 - x1, H = x2 - x0;
  // Non-uniform Simpson weights
  const double w0 = H * (2.0 - h1 / h0) / 6.0;
  const double w1 = H * H * H / (6.0 * h0 * h1);
  const double w2 = H * (2.0 - h0 / h1) / 6.0;
  return w0 * f0 + w1 * f1 + w2 * f2;
}

// Integral over [xa, xb] of the quadratic through three nodes (for the
// trailing odd interval).
template <class T>
T quadratic_partial(double x0, double x1, double x2, T f0, T f1, T f2,
                    double xa, double xb) {
  // Lagrange basis integrated exactly
  auto ibasis = [&](double xi, double xj) {
    // integral of (x-xi)(x-xj) over [xa,xb]
    auto F = [&](double x) {
      return x * x * x / 3.0 - (xi + xj) * x * x / 2.0 + xi * xj * x;
    };
    return F(xb) - F(xa);
  };
  const T c0 = f0 * (ibasis(x1, x2) / ((x0 - x1) * (x0 - x2)));
  const T c1 = f1 * (ibasis(x0, x2) / ((x1 - x0) * (x1 - x2)));
  const T c2 = f2 * (ibasis(x0, x1) / ((x2 - x0) * (x2 - x1)));
  return c0 + c1 + c2;
}

template <class T>
T quad_impl(std::span<const double> x, std::span<const T> f, QuadWeight w) {
  const size_t n = x.size();
  if (n != f.size()) throw ValidationError("quad_weighted: size mismatch");
  if (n < 3) throw ValidationError("quad_weighted: grid too short");
  std::vector<T> g(f.begin(), f.end());
  if (w == QuadWeight::radial)
    for (size_t i = 0; i < n; ++i) g[i] *= x[i];

  T total{};
  size_t i = 0;
  for (; i + 2 < n; i += 2)
    total += simpson_cell(x[i], x[i + 1], x[i + 2], g[i], g[i + 1], g[i + 2]);
  if (i + 1 < n)  // one interval left: quadratic through the last three nodes
    total += quadratic_partial(x[n - 3], x[n - 2], x[n - 1], g[n - 3], g[n - 2],
                               g[n - 1], x[n - 2], x[n - 1]);
  return total;
}

double simpson_rule(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_rule(f, a, m, fa, flm, fm);
  const double right = simpson_rule(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw NumericalError("adaptive_simpson: max depth reached");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double quad_weighted(std::span<const double> grid,
                     std::span<const double> values, QuadWeight weight) {
  return quad_impl<double>(grid, values, weight);
}

Complex quad_weighted(std::span<const double> grid,
                      std::span<const Complex> values, QuadWeight weight) {
  return quad_impl<Complex>(grid, values, weight);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson_rule(f, a, b, fa, fm, fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace vortexspec::num
