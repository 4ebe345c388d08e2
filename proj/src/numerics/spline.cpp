#include "vortexspec/numerics/spline.hpp"

#include <algorithm>
#include <cmath>

namespace vortexspec::num {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y,
                         double slope_left, double slope_right)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const size_t n = x_.size();
  if (n < 3 || n != y_.size())
    throw ValidationError("CubicSpline: need >= 3 matching nodes");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw ValidationError("CubicSpline: grid not strictly increasing");

  // Solve the tridiagonal system for second derivatives.
  std::vector<double> a(n), b(n), c(n), r(n);
  const bool cl = std::isfinite(slope_left), cr = std::isfinite(slope_right);
  {
    const double h0 = x_[1] - x_[0];
    if (cl) {
      b[0] = 2.0 * h0;
      c[0] = h0;
      r[0] = 6.0 * ((y_[1] - y_[0]) / h0 - slope_left);
    } else {
      b[0] = 1.0;
      c[0] = 0.0;
      r[0] = 0.0;
    }
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hm = x_[i] - x_[i - 1], hp = x_[i + 1] - x_[i];
    a[i] = hm;
    b[i] = 2.0 * (hm + hp);
    c[i] = hp;
    r[i] = 6.0 * ((y_[i + 1] - y_[i]) / hp - (y_[i] - y_[i - 1]) / hm);
  }
  {
    const double hn = x_[n - 1] - x_[n - 2];
    if (cr) {
      a[n - 1] = hn;
      b[n - 1] = 2.0 * hn;
      r[n - 1] = 6.0 * (slope_right - (y_[n - 1] - y_[n - 2]) / hn);
    } else {
      a[n - 1] = 0.0;
      b[n - 1] = 1.0;
      r[n - 1] = 0.0;
    }
  }
  m_.resize(n);
  std::vector<double> cp(n), rp(n);
  cp[0] = c[0] / b[0];
  rp[0] = r[0] / b[0];
  for (size_t i = 1; i < n; ++i) {
    const double den = b[i] - a[i] * cp[i - 1];
    cp[i] = (i + 1 < n) ? c[i] / den : 0.0;
    rp[i] = (r[i] - a[i] * rp[i - 1]) / den;
  }
  m_[n - 1] = rp[n - 1];
  for (size_t i = n - 1; i-- > 0;) m_[i] = rp[i] - cp[i] * m_[i + 1];
}

size_t CubicSpline::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  size_t i = (it == x_.begin()) ? 0 : (it - x_.begin() - 1);
  return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
  const size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h -
         (3.0 * A * A - 1.0) / 6.0 * h * m_[i] +
         (3.0 * B * B - 1.0) / 6.0 * h * m_[i + 1];
}

double CubicSpline::integral_weighted(double x, int pw) const {
  if (pw != 0 && pw != 1)
    throw ValidationError("CubicSpline: weight power must be 0 or 1");
  double acc = 0.0;
  const size_t last = segment(x);
  for (size_t i = 0; i <= last; ++i) {
    const double xa = x_[i];
    const double xb = (i == last) ? x : x_[i + 1];
    if (xb <= xa) continue;
    // 3-point Gauss-Legendre per segment: exact for the cubic (times x).
    static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
    const double mid = 0.5 * (xa + xb), half = 0.5 * (xb - xa);
    for (int q = 0; q < 3; ++q) {
      const double xx = mid + half * gx[q];
      const double w = (pw == 1) ? xx : 1.0;
      acc += gw[q] * half * w * (*this)(xx);
    }
  }
  return acc;
}

std::vector<double> fd_derivative_4(std::span<const double> x,
                                    std::span<const double> y) {
  const size_t n = x.size();
  if (n < 5 || y.size() != n)
    throw ValidationError("fd_derivative_4: need >= 5 matching nodes");
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    // 5-point stencil centered as well as possible (Fornberg weights).
    size_t j0 = (i < 2) ? 0 : ((i + 2 >= n) ? n - 5 : i - 2);
    const double* xs = x.data() + j0;
    const double z = x[i];
    // Fornberg's algorithm for first-derivative weights on 5 nodes
    double c[5][2] = {};  // c[j][d]: weight of node j for derivative d
    double c1 = 1.0, c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int ii = 1; ii < 5; ++ii) {
      double c2 = 1.0;
      const double c5 = c4;
      c4 = xs[ii] - z;
      for (int jj = 0; jj < ii; ++jj) {
        const double c3 = xs[ii] - xs[jj];
        c2 *= c3;
        if (jj == ii - 1) {
          c[ii][1] = c1 * (c[ii - 1][0] - c5 * c[ii - 1][1]) / c2;
          c[ii][0] = -c1 * c5 * c[ii - 1][0] / c2;
        }
        c[jj][1] = (c4 * c[jj][1] - c[jj][0]) / c3;
        c[jj][0] = c4 * c[jj][0] / c3;
      }
      c1 = c2;
    }
    double acc = 0.0;
    for (int j = 0; j < 5; ++j) acc += c[j][1] * y[j0 + j];
    out[i] = acc;
  }
  return out;
}

}  // namespace vortexspec::num
