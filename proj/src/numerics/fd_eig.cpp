#include "vortexspec/numerics/fd_eig.hpp"

#include <algorithm>
#include <cmath>

namespace vortexspec::num {

std::vector<double> symmetric_tridiag_eigenvalues(std::vector<double> d,
                                                  std::vector<double> e) {
  // Implicit QL with Wilkinson shifts (classic tql1 scheme).
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (static_cast<int>(e.size()) != n - 1)
    throw ValidationError("symmetric_tridiag_eigenvalues: size mismatch");
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw NumericalError("symmetric_tridiag_eigenvalues: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

struct Tridiag {
  std::vector<double> diag, off;  // off has n-1 entries
};

Tridiag assemble(const std::function<double(double)>& P,
                 const std::function<double(double)>& Q, double a, double b,
                 int n) {
  if (n < 3) throw ValidationError("fd assembly: grid too coarse");
  const double h = (b - a) / (n + 1);
  Tridiag t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = a + (i + 1) * h;
    const double pl = P(x - 0.5 * h), pr = P(x + 0.5 * h);
    t.diag[i] = (pl + pr) / (h * h) + Q(x);
    if (i + 1 < n) t.off[i] = -pr / (h * h);
  }
  return t;
}

int negative_pivots(const Tridiag& t) {
  int count = 0;
  double prev = 0.0;
  const int n = static_cast<int>(t.diag.size());
  for (int i = 0; i < n; ++i) {
    double piv = t.diag[i];
    if (i > 0) piv -= t.off[i - 1] * t.off[i - 1] / prev;
    if (piv == 0.0) piv = 1e-300;  // nudge off exact singularity
    if (piv < 0.0) ++count;
    prev = piv;
  }
  return count;
}

}  // namespace

std::vector<double> fd_generalized_eig(const SLPencil& pencil, double a,
                                       double b, int n) {
  auto t = assemble(pencil.P, pencil.Q, a, b, n);
  const double h = (b - a) / (n + 1);
  std::vector<double> s(n);
  int sign = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (i + 1) * h;
    s[i] = pencil.S(x);
    const int sg = (s[i] > 0) - (s[i] < 0);
    if (sg == 0) throw NumericalError("fd_generalized_eig: S vanishes on grid");
    if (sign == 0) sign = sg;
    if (sg != sign)
      throw NumericalError("fd_generalized_eig: S changes sign on grid");
  }
  // A y = mu S y  ->  |S|^{-1/2} A |S|^{-1/2} v = (sign mu) v
  std::vector<double> d(n), e(n - 1);
  for (int i = 0; i < n; ++i) d[i] = t.diag[i] / std::abs(s[i]);
  for (int i = 0; i + 1 < n; ++i)
    e[i] = t.off[i] / std::sqrt(std::abs(s[i]) * std::abs(s[i + 1]));
  auto lam = symmetric_tridiag_eigenvalues(std::move(d), std::move(e));
  for (auto& v : lam) v *= sign;
  std::sort(lam.begin(), lam.end());
  return lam;
}

int fd_negative_index(const SLParamOperator& op, double a, double b_dom, int n,
                      double bval) {
  auto Qb = [&](double x) { return op.Q(x, bval); };
  return negative_pivots(assemble(op.P, Qb, a, b_dom, n));
}

std::vector<ParamSingularity> fd_param_singularities(
    const SLParamOperator& op, double a, double b_dom, int n,
    const std::vector<double>& samples, int max_roots, double b_tol) {
  std::vector<ParamSingularity> out;
  if (samples.size() < 2) return out;
  double xa = samples.front();
  int ca = fd_negative_index(op, a, b_dom, n, xa);
  for (size_t i = 1; i < samples.size(); ++i) {
    double xb = samples[i];
    int cb = fd_negative_index(op, a, b_dom, n, xb);
    int lo_c = ca;
    double lo = xa, hi = xb;
    while (cb != lo_c && static_cast<int>(out.size()) < max_roots) {
      // bisect to isolate one crossing at a time
      double l = lo, h = hi;
      int cl = lo_c;
      while (h - l > b_tol * std::max(1.0, std::abs(h))) {
        const double m = 0.5 * (l + h);
        const int cm = fd_negative_index(op, a, b_dom, n, m);
        if (cm != cl) {
          h = m;
        } else {
          l = m;
          cl = cm;
        }
      }
      const int ch = fd_negative_index(op, a, b_dom, n, h);
      out.push_back({0.5 * (l + h), ch - cl});
      lo = h;
      lo_c = ch;
    }
    xa = xb;
    ca = cb;
  }
  return out;
}

std::vector<double> fd_param_null_vector(const SLParamOperator& op, double a,
                                         double b_dom, int n, double bval) {
  auto Qb = [&](double x) { return op.Q(x, bval); };
  auto t = assemble(op.P, Qb, a, b_dom, n);
  // Inverse iteration with a tiny shift; tridiagonal Thomas solve.
  std::vector<double> v(n, 1.0);
  for (auto& x : v) x /= std::sqrt(static_cast<double>(n));
  for (int sweep = 0; sweep < 6; ++sweep) {
    std::vector<double> c(n), dd(n), x(n);
    double piv = t.diag[0] + 1e-12;
    c[0] = t.off.empty() ? 0.0 : t.off[0] / piv;
    x[0] = v[0] / piv;
    for (int i = 1; i < n; ++i) {
      piv = (t.diag[i] + 1e-12) - t.off[i - 1] * c[i - 1];
      if (std::abs(piv) < 1e-300) piv = 1e-300;
      c[i] = (i + 1 < n) ? t.off[i] / piv : 0.0;
      x[i] = (v[i] - t.off[i - 1] * x[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) v[i] = x[i] / norm;
  }
  return v;
}

}  // namespace vortexspec::num
