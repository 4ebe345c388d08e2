#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec {

enum class ProfileKind {
  rankine,
  lamb_oseen,
  kaufmann_scully,
  scaled_kaufmann_scully,
  tabulated,
  user,
};

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Columnar vortex profile: angular velocity Omega, vorticity W, their
/// derivatives, plus metadata. Immutable after construction; evaluation is
/// pure and safe to share across threads.
struct VortexProfile {
  std::function<double(double)> omega;
  std::function<double(double)> omega_prime;
  std::function<double(double)> vorticity;
  std::function<double(double)> vorticity_prime;
  double r_cut = 30.0;  // beyond this, far-field asymptotics apply
  ProfileKind kind = ProfileKind::user;
  double epsilon = 1.0;             // scaled_kaufmann_scully parameter
  std::vector<double> interfaces;   // coefficient jump radii (Rankine: {1})
  std::vector<double> tab_r, tab_w; // retained for tabulated serialization

  bool smooth() const { return interfaces.empty(); }
};

/// Closed-form profiles, normalized to Omega(0) = 1, W(0) = 2.
/// epsilon only matters for scaled_kaufmann_scully (must be > 0).
VortexProfile make_builtin(ProfileKind kind, double epsilon = 1.0);

/// Profile from an arbitrary vorticity callable via the reconstruction
/// Omega(r) = r^{-2} int_0^r W(s) s ds evaluated by per-node quadrature on
/// `grid` (strictly increasing, starting near 0).
VortexProfile omega_from_vorticity(std::function<double(double)> w,
                                   std::span<const double> grid);

/// Tabulated profile from discrete (r, W) samples (cubic-spline vorticity,
/// fourth-order finite-difference W').
VortexProfile tabulated_from_points(std::span<const double> r,
                                    std::span<const double> w);

/// Rayleigh function  Phi(r) = 2 Omega(r) W(r).
double rayleigh_function(const VortexProfile& p, double r);

/// Richardson function  J(r) = Phi(r) / Omega'(r)^2; +inf where Omega' = 0
/// and Phi > 0, NaN where both vanish.
double richardson_profile(const VortexProfile& p, double r);

struct Circulation {
  double gamma = 0.0;          // int_0^infty W r dr (partial + tail estimate)
  bool finite = true;
  double tail_estimate = 0.0;  // bound used for the truncated part
};

/// Total circulation with an (R/r)^4 tail model beyond the truncation
/// radius; divergence is reported, not thrown.
Circulation total_circulation(const VortexProfile& p);

struct CriteriaWitness {
  double r;
  std::string quantity;
  double value;
};

struct CriteriaReport {
  bool h1_holds = false;
  bool h2_holds = false;
  std::vector<CriteriaWitness> witnesses;
  double gamma_circulation = 0.0;
  double phi_min = 0.0;
};

/// Default scan grid for the standing-assumption checks (log-spaced,
/// reaching far enough out that the r J'(r) -> 0 test is meaningful).
std::vector<double> default_scan_grid();

/// Checks the monotone-vorticity assumption (W'(0) = 0, W' < 0, finite
/// circulation, r W' -> 0) and the monotone Richardson-function assumption
/// (J' < 0, r J' -> 0) on the scan grid. Witnesses record every failure.
CriteriaReport check_assumptions(const VortexProfile& p,
                                 std::span<const double> scan_grid);

}  // namespace vortexspec
