#pragma once

#include <functional>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::shear {

/// Channel equilibrium: horizontal velocity U(z), density rho(z) > 0,
/// gravity g, channel height L. The hydrostatic pressure is implied by
/// p' = -rho g and never stored.
struct ShearProfile {
  std::function<double(double)> U, U_prime, U_pprime;
  std::function<double(double)> rho, rho_prime;
  double g = 1.0;
  double L = 1.0;

  double n_squared(double z) const { return -g * rho_prime(z) / rho(z); }
  double max_abs_U() const;
};

/// Homogeneous fluid at rest in the channel metric: U = 0, rho = 1.
ShearProfile still_profile(double L);

enum class EquationTag { rt, rt_boussinesq, rayleigh, taylor_goldstein };
std::string to_string(EquationTag tag);

struct ChannelEigenpair {
  Complex s;
  double k = 0.0;
  std::vector<double> z;
  std::vector<Complex> u_z;
  std::vector<Complex> u_z_prime;  // kept alongside for identity checks
  double residual = 0.0;           // integral-identity residual, normalized
  EquationTag equation_tag = EquationTag::rt;
  bool winding_verified = false;   // argument-principle check near the root
};

/// Rest-state stability in the Boussinesq approximation:
/// -u'' + k^2 (1 + N^2/s^2) u = 0, Dirichlet. Returns up to n_max
/// eigenpairs ordered by decreasing |s| (unstable real ones first).
std::vector<ChannelEigenpair> rt_eigs_boussinesq(const ShearProfile& p,
                                                 double k, int n_max);

/// Full (non-Boussinesq) rest-state problem:
/// -(rho u')' + k^2 rho u - (k^2 g / s^2) rho' u = 0.
std::vector<ChannelEigenpair> rt_eigs_full(const ShearProfile& p, double k,
                                           int n_max);

struct InflectionReport {
  bool can_be_unstable = false;
  std::vector<double> sign_change_points;
};

/// Necessary condition for shear instability: U'' changes sign.
InflectionReport rayleigh_inflection_check(const ShearProfile& p);

/// Complex search region; the strip |Re s| < re_exclusion is excluded
/// (continuous spectrum sits on the imaginary axis).
struct SearchRegion {
  double re_lo, re_hi, im_lo, im_hi;
  double re_exclusion = 1e-4;
};

SearchRegion default_search_region(const ShearProfile& p, double k);

/// Unstable modes of -u'' + k^2 u + i k U''/(s + i k U) u = 0 located by
/// complex shooting over the region; every returned pair satisfies the
/// integral identity to the acceptance tolerance.
std::vector<ChannelEigenpair> rayleigh_eigensolve(const ShearProfile& p,
                                                  double k,
                                                  const SearchRegion& region);

/// Same for the stratified problem
/// -(rho u')' + k^2 rho u + (ik/gamma)(rho U')' u - (k^2 g/gamma^2) rho' u = 0.
std::vector<ChannelEigenpair> taylor_goldstein_eigensolve(
    const ShearProfile& p, double k, const SearchRegion& region);

struct MilesHowardReport {
  double ri_min = 0.0;
  bool stable_certified = false;
  std::vector<std::pair<double, double>> ri;  // (z, Ri)
};

/// Local Richardson number Ri = N^2 / U'^2 over the channel;
/// min Ri >= 1/4 certifies spectral stability.
MilesHowardReport miles_howard_report(const ShearProfile& p);

/// Residual of the half-power substitution identity: with
/// v = u / gamma^{1/2}, true eigenpairs make the weighted integral vanish.
/// The gamma^{1/2} branch is tracked continuously in z; winding through 0
/// raises NumericalError.
double howard_substitution_residual(const ChannelEigenpair& pair,
                                    const ShearProfile& p);

struct SquireMode {
  double k = 0.0;
  Complex s;
  double g_equiv = 0.0;
};

/// Equivalent 2D mode of a 3D plane-wave perturbation:
/// k = sqrt(k1^2 + k2^2), s = (k/k1) sigma, g -> (k^2/k1^2) g.
SquireMode squire_transform(double k1, double k2, Complex sigma, double g);

}  // namespace vortexspec::shear
