#pragma once

#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::rankine {

/// Modified Bessel values and derivatives at one argument.
struct BesselPair {
  int order = 0;
  double x = 0.0;
  double value_i = 0.0, deriv_i = 0.0;
  double value_k = 0.0, deriv_k = 0.0;
};

/// I_m, K_m and derivatives (derivatives via the two-term recurrences).
/// Requires x > 0, m >= 0.
BesselPair bessel_mod(int m, double x);

/// e^x K_m(x) and e^x K_m'(x); safe for large x where K alone underflows.
struct ScaledK {
  double value = 0.0, deriv = 0.0;
};
ScaledK bessel_k_scaled(int m, double x);

/// Dispersion residual for the piecewise-constant-vorticity column at
/// spectral parameter b (angular mode m != 0, axial wavenumber k != 0):
/// interior/exterior matching leaves a real function of b whose zeros are
/// the neutral oscillation frequencies. Evaluated in a regularized form
/// that is continuous through beta = 0; at interior poles the value is
/// +/-inf.
double dispersion_residual(int m, double k, double b);

/// beta^2 = k^2 (1 - 4 / (m^2 (1-b)^2))
double dispersion_beta_squared(int m, double k, double b);

enum class DispersionBranch { above_1, below_1 };

struct DispersionRoot {
  double b = 0.0;
  DispersionBranch branch = DispersionBranch::above_1;
  double residual = 0.0;
  double beta_squared = 0.0;
};

struct KelvinModesRankine {
  std::vector<DispersionRoot> upper;  // decreasing toward 1
  std::vector<DispersionRoot> lower;  // increasing toward 1
};

/// First `count` dispersion roots on each side of b = 1, all inside
/// |b - 1| <= 2/|m|. Fewer roots than requested is reported by shorter
/// lists, not an error.
KelvinModesRankine kelvin_modes_rankine(int m, double k, int count);

}  // namespace vortexspec::rankine
