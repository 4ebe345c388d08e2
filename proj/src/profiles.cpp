#include "vortexspec/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vortexspec/numerics/grids.hpp"
#include "vortexspec/numerics/quadrature.hpp"
#include "vortexspec/numerics/spline.hpp"

namespace vortexspec {

namespace {

// (1 - e^{-x}) / x, stable at small x.
double expm1_ratio(double x) {
  if (std::abs(x) < 1e-2) {
    // sum (-1)^j x^j / (j+1)!
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= 10; ++j) {
      term *= -x / (j + 1);
      sum += term;
    }
    return sum;
  }
  return -std::expm1(-x) / x;
}

// d/dr of (1 - e^{-r^2})/r^2
double lamb_oseen_omega_prime(double r) {
  const double x = r * r;
  if (r < 1e-1) {
    // sum_{j>=1} (-1)^j 2j r^{2j-1} / (j+1)!
    double sum = 0.0, pow = 1.0, fact = 1.0;
    for (int j = 1; j <= 10; ++j) {
      pow *= -x;
      fact *= (j + 1);
      sum += 2.0 * j * pow / (fact * r);
    }
    return sum;
  }
  return (2.0 / (r * r * r)) * ((1.0 + x) * std::exp(-x) - 1.0);
}

// 5-point finite-difference derivative of a callable, central when possible.
double fd5_derivative(const std::function<double(double)>& f, double r) {
  const double h = 1e-3 * std::max(1.0, std::abs(r) / 4.0);
  if (r >= 2.0 * h) {
    return (f(r - 2 * h) - 8.0 * f(r - h) + 8.0 * f(r + h) - f(r + 2 * h)) /
           (12.0 * h);
  }
  // one-sided forward stencil on [r, r+4h]
  return (-25.0 * f(r) + 48.0 * f(r + h) - 36.0 * f(r + 2 * h) +
          16.0 * f(r + 3 * h) - 3.0 * f(r + 4 * h)) /
         (12.0 * h);
}

// 5-point Gauss-Legendre of f(s) * s over [a, b]
double gauss5_radial(const std::function<double(double)>& f, double a,
                     double b) {
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < 5; ++q) {
    const double s = mid + half * gx[q];
    acc += gw[q] * half * f(s) * s;
  }
  return acc;
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::rankine: return "rankine";
    case ProfileKind::lamb_oseen: return "lamb_oseen";
    case ProfileKind::kaufmann_scully: return "kaufmann_scully";
    case ProfileKind::scaled_kaufmann_scully: return "scaled_kaufmann_scully";
    case ProfileKind::tabulated: return "tabulated";
    case ProfileKind::user: return "user";
  }
  return "user";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "rankine") return ProfileKind::rankine;
  if (name == "lamb_oseen") return ProfileKind::lamb_oseen;
  if (name == "kaufmann_scully") return ProfileKind::kaufmann_scully;
  if (name == "scaled_kaufmann_scully")
    return ProfileKind::scaled_kaufmann_scully;
  if (name == "tabulated") return ProfileKind::tabulated;
  if (name == "user") return ProfileKind::user;
  throw ValidationError("unknown profile kind: " + name);
}

VortexProfile make_builtin(ProfileKind kind, double epsilon) {
  VortexProfile p;
  p.kind = kind;
  switch (kind) {
    case ProfileKind::rankine:
      p.omega = [](double r) { return r <= 1.0 ? 1.0 : 1.0 / (r * r); };
      p.omega_prime = [](double r) {
        return r <= 1.0 ? 0.0 : -2.0 / (r * r * r);
      };
      p.vorticity = [](double r) { return r < 1.0 ? 2.0 : 0.0; };
      p.vorticity_prime = [](double) { return 0.0; };
      p.r_cut = 1.0;
      p.interfaces = {1.0};
      return p;
    case ProfileKind::lamb_oseen:
      p.omega = [](double r) { return expm1_ratio(r * r); };
      p.omega_prime = lamb_oseen_omega_prime;
      p.vorticity = [](double r) { return 2.0 * std::exp(-r * r); };
      p.vorticity_prime = [](double r) { return -4.0 * r * std::exp(-r * r); };
      p.r_cut = 8.0;
      return p;
    case ProfileKind::kaufmann_scully:
      epsilon = 1.0;
      [[fallthrough]];
    case ProfileKind::scaled_kaufmann_scully: {
      if (!(epsilon > 0.0))
        throw ValidationError("scaled_kaufmann_scully requires epsilon > 0");
      const double e = epsilon;
      p.kind = kind;
      p.epsilon = e;
      p.omega = [e](double r) { return 1.0 / (1.0 + e * r * r); };
      p.omega_prime = [e](double r) {
        const double d = 1.0 + e * r * r;
        return -2.0 * e * r / (d * d);
      };
      p.vorticity = [e](double r) {
        const double d = 1.0 + e * r * r;
        return 2.0 / (d * d);
      };
      p.vorticity_prime = [e](double r) {
        const double d = 1.0 + e * r * r;
        return -8.0 * e * r / (d * d * d);
      };
      p.r_cut = std::clamp(100.0 / std::sqrt(e), 10.0, 1000.0);
      return p;
    }
    case ProfileKind::tabulated:
    case ProfileKind::user:
      throw ValidationError("make_builtin: kind is not a closed-form profile");
  }
  throw ValidationError("make_builtin: unknown kind");
}

VortexProfile omega_from_vorticity(std::function<double(double)> w,
                                   std::span<const double> grid) {
  if (grid.size() < 3)
    throw ValidationError("omega_from_vorticity: grid too short");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("omega_from_vorticity: grid not increasing");
  if (grid.front() < 0.0)
    throw ValidationError("omega_from_vorticity: negative radius");

  auto nodes = std::make_shared<std::vector<double>>(grid.begin(), grid.end());
  if (nodes->front() > 0.0) nodes->insert(nodes->begin(), 0.0);
  auto cum = std::make_shared<std::vector<double>>(nodes->size(), 0.0);
  for (size_t i = 1; i < nodes->size(); ++i) {
    const double inc = gauss5_radial(w, (*nodes)[i - 1], (*nodes)[i]);
    if (!std::isfinite(inc))
      throw NumericalError("omega_from_vorticity: quadrature failure");
    (*cum)[i] = (*cum)[i - 1] + inc;
  }

  const double w0 = w(0.0);
  auto integral_to = [nodes, cum, w](double r) {
    auto it = std::upper_bound(nodes->begin(), nodes->end(), r);
    const size_t j = (it - nodes->begin()) - 1;
    double acc = (*cum)[std::min(j, cum->size() - 1)];
    const double rj = (*nodes)[std::min(j, nodes->size() - 1)];
    if (r > rj) acc += gauss5_radial(w, rj, r);
    return acc;
  };

  VortexProfile p;
  p.kind = ProfileKind::tabulated;
  p.vorticity = w;
  p.tab_r.assign(nodes->begin(), nodes->end());
  p.tab_w.resize(p.tab_r.size());
  for (size_t i = 0; i < p.tab_r.size(); ++i) p.tab_w[i] = w(p.tab_r[i]);
  p.r_cut = nodes->back();
  p.omega = [integral_to, w, w0](double r) {
    if (r < 1e-6) {
      // W(s) ~ W(0) + c s^2 gives Omega ~ W(0)/2 + (W(r) - W(0))/4
      return 0.5 * w0 + 0.25 * (w(r) - w0);
    }
    return integral_to(r) / (r * r);
  };
  p.omega_prime = [omega = p.omega, w, w0](double r) {
    if (r < 1e-6) return r > 0.0 ? (w(r) - w0) / (2.0 * r) : 0.0;
    return (w(r) - 2.0 * omega(r)) / r;
  };
  p.vorticity_prime = [w](double r) { return fd5_derivative(w, r); };
  return p;
}

VortexProfile tabulated_from_points(std::span<const double> r,
                                    std::span<const double> w) {
  if (r.size() != w.size() || r.size() < 5)
    throw ValidationError("tabulated_from_points: need >= 5 matching samples");
  auto spline = std::make_shared<num::CubicSpline>(r, w, 0.0);  // W'(0) = 0
  const double rN = r.back(), wN = w.back();
  auto wfun = [spline, rN, wN](double x) {
    if (x <= rN) return (*spline)(std::max(x, 0.0));
    const double t = rN / x;
    return wN * t * t * t * t;  // (R/r)^4 tail model
  };
  auto dw_nodes = num::fd_derivative_4(r, w);
  auto dspline = std::make_shared<num::CubicSpline>(r, dw_nodes);
  auto out = omega_from_vorticity(wfun, r);
  out.vorticity_prime = [dspline, rN, wN](double x) {
    if (x <= rN) return (*dspline)(std::max(x, 0.0));
    const double t = rN / x;
    return -4.0 * wN * t * t * t * t / x;
  };
  out.tab_r.assign(r.begin(), r.end());
  out.tab_w.assign(w.begin(), w.end());
  return out;
}

double rayleigh_function(const VortexProfile& p, double r) {
  if (r < 0.0) throw ValidationError("rayleigh_function: r must be >= 0");
  return 2.0 * p.omega(r) * p.vorticity(r);
}

double richardson_profile(const VortexProfile& p, double r) {
  const double dphi = p.omega_prime(r);
  const double phi = rayleigh_function(p, r);
  if (dphi == 0.0) {
    if (phi == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::copysign(std::numeric_limits<double>::infinity(), phi);
  }
  return phi / (dphi * dphi);
}

Circulation total_circulation(const VortexProfile& p) {
  const double R = std::max(200.0, 2.0 * p.r_cut);
  Circulation c;
  double lo = 0.0;
  double partial = 0.0;
  auto integrand = [&](double r) { return p.vorticity(r) * r; };
  // Geometric cut points keep the adaptive rule from stepping over the core;
  // interface radii are isolated so endpoint jumps cannot stall refinement.
  std::vector<double> cuts = p.interfaces;
  for (double s = 0.5; s < R; s *= 2.0) cuts.push_back(s);
  cuts.push_back(R);
  std::sort(cuts.begin(), cuts.end());
  for (double hi : cuts) {
    if (hi <= lo) continue;
    const double nudge = 1e-12 * std::max(1.0, hi);
    partial += num::adaptive_simpson(integrand, lo + nudge, hi - nudge, 1e-11);
    lo = hi;
  }
  const double wR = std::abs(p.vorticity(R));
  c.tail_estimate = 0.5 * wR * R * R;  // assumes |W| <= W(R) (R/r)^4 beyond R
  c.finite = !(wR * R * R > 1e-2 * std::abs(partial));
  c.gamma = partial + (c.finite ? c.tail_estimate : 0.0);
  return c;
}

std::vector<double> default_scan_grid() { return num::logspace(1e-3, 200.0, 800); }

CriteriaReport check_assumptions(const VortexProfile& p,
                                 std::span<const double> grid) {
  if (grid.size() < 8)
    throw ValidationError("check_assumptions: scan grid too short");
  CriteriaReport rep;
  rep.h1_holds = true;
  rep.h2_holds = true;

  const double w_head = std::abs(p.vorticity(0.0));
  const double dead_w = 1e-13 * std::max(w_head, 1.0);

  // W'(0) = 0: linear extrapolation of W' to the axis
  {
    const double r1 = grid[0], r2 = grid[1];
    const double d1 = p.vorticity_prime(r1), d2 = p.vorticity_prime(r2);
    const double extrap = d1 - r1 * (d2 - d1) / (r2 - r1);
    if (std::abs(extrap) > 1e-6 * std::max(1.0, w_head)) {
      rep.h1_holds = false;
      rep.witnesses.push_back({0.0, "W'(0)", extrap});
    }
  }

  // W' < 0 for r > 0 (a dead tail where W has vanished is not a failure)
  for (double r : grid) {
    const double dw = p.vorticity_prime(r);
    const bool dead = std::abs(p.vorticity(r)) < dead_w;
    if (dw > 0.0 || (dw == 0.0 && !dead)) {
      rep.h1_holds = false;
      rep.witnesses.push_back({r, "W'", dw});
    }
  }

  // finite circulation
  const auto circ = total_circulation(p);
  rep.gamma_circulation = circ.gamma;
  if (!circ.finite) {
    rep.h1_holds = false;
    rep.witnesses.push_back({0.0, "Gamma", std::numeric_limits<double>::infinity()});
  }

  // r W'(r) -> 0, tested as |R W'(R)| below threshold at the grid end
  {
    const double R = grid.back();
    const double v = R * p.vorticity_prime(R);
    if (std::abs(v) > 1e-4) {
      rep.h1_holds = false;
      rep.witnesses.push_back({R, "r W'", v});
    }
  }

  // Rayleigh function minimum over the grid
  rep.phi_min = std::numeric_limits<double>::infinity();
  for (double r : grid)
    rep.phi_min = std::min(rep.phi_min, rayleigh_function(p, r));

  // H2: J strictly decreasing along the grid, r J'(r) -> 0 at the end
  std::vector<double> J(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    J[i] = richardson_profile(p, grid[i]);
  double j_head = 0.0;
  for (size_t i = 0; i < grid.size(); ++i)
    if (std::isfinite(J[i])) {
      j_head = std::max(j_head, std::abs(J[i]));
      break;
    }
  const double dead_j = 1e-13 * std::max(j_head, 1.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(J[i])) {
      rep.h2_holds = false;
      rep.witnesses.push_back({grid[i], "J", J[i]});
    }
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(J[i - 1]) || !std::isfinite(J[i])) continue;
    const double dj = J[i] - J[i - 1];
    const bool dead = std::abs(J[i]) < dead_j && std::abs(J[i - 1]) < dead_j;
    if (dj > 0.0 || (dj == 0.0 && !dead)) {
      rep.h2_holds = false;
      rep.witnesses.push_back({grid[i], "J'", dj / (grid[i] - grid[i - 1])});
    }
  }
  {
    const size_t n = grid.size();
    if (std::isfinite(J[n - 1]) && std::isfinite(J[n - 2])) {
      const double jp = (J[n - 1] - J[n - 2]) / (grid[n - 1] - grid[n - 2]);
      const double v = grid[n - 1] * jp;
      if (std::abs(v) > 1e-4) {
        rep.h2_holds = false;
        rep.witnesses.push_back({grid[n - 1], "r J'", v});
      }
    } else {
      rep.h2_holds = false;
    }
  }
  return rep;
}

}  // namespace vortexspec
