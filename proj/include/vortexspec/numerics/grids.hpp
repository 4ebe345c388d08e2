#pragma once

#include <cmath>
#include <vector>

namespace vortexspec::num {

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1.0);
  return g;
}

inline std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> g(n);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1.0));
  return g;
}

/// Log-spaced below the knee, linear above; clustering near r = 0 matches the
/// r^{|m|-1} behavior of radial eigenfunctions.
inline std::vector<double> radial_grid(double r0, double R, int n_log,
                                       int n_lin, double knee = 1.0) {
  auto g = logspace(r0, knee, n_log);
  auto lin = linspace(knee, R, n_lin);
  g.insert(g.end(), lin.begin() + 1, lin.end());
  return g;
}

}  // namespace vortexspec::num
