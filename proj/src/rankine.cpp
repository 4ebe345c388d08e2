#include "vortexspec/rankine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vortexspec/numerics/roots.hpp"

namespace vortexspec::rankine {

namespace {

double bessel_i(int m, double x) { return std::cyl_bessel_i(m, x); }
double bessel_k(int m, double x) { return std::cyl_bessel_k(m, x); }
double bessel_j(int m, double x) { return std::cyl_bessel_j(m, x); }

// I_m'(b)/(b I_m(b)) - m/b^2, analytic in b^2 through 0; b2 may be negative,
// in which case the ratio is evaluated through ordinary Bessel functions.
// The direct formulas cancel like m/b2 near 0, so a three-term Taylor
// window keeps the residual accurate through beta = 0.
double regularized_i_ratio(int m, double b2) {
  if (std::abs(b2) < 1e-4) {
    const double mp1 = m + 1.0, mp2 = m + 2.0, mp3 = m + 3.0;
    const double c0 = 0.5 / mp1;
    const double c1 = -1.0 / (8.0 * mp1 * mp1 * mp2);
    const double c2 = (1.0 / (mp1 * mp2 * mp3) - 3.0 / (mp1 * mp1 * mp2) +
                       2.0 / (mp1 * mp1 * mp1)) /
                      64.0;
    return c0 + b2 * (c1 + b2 * c2);
  }
  if (b2 > 0.0) {
    const double beta = std::sqrt(b2);
    const double im = bessel_i(m, beta);
    const double ip = 0.5 * (bessel_i(m >= 1 ? m - 1 : 1, beta) +
                             bessel_i(m + 1, beta));
    return ip / (beta * im) - m / b2;
  }
  // I_m(i y) ~ J_m(y): the ratio becomes -J_m'(y)/(y J_m(y))
  const double y = std::sqrt(-b2);
  const double jm = bessel_j(m, y);
  if (jm == 0.0) return std::numeric_limits<double>::infinity();
  const double jp = 0.5 * ((m >= 1 ? bessel_j(m - 1, y) : -bessel_j(1, y)) -
                           bessel_j(m + 1, y));
  return -jp / (y * jm) + m / y / y;
}

}  // namespace

BesselPair bessel_mod(int m, double x) {
  if (!(x > 0.0)) throw ValidationError("bessel_mod: x must be > 0");
  if (m < 0) throw ValidationError("bessel_mod: order must be >= 0");
  BesselPair p;
  p.order = m;
  p.x = x;
  p.value_i = bessel_i(m, x);
  p.value_k = bessel_k(m, x);
  const int ml = (m >= 1) ? m - 1 : 1;  // I_{-1} = I_1, K_{-1} = K_1
  p.deriv_i = 0.5 * (bessel_i(ml, x) + bessel_i(m + 1, x));
  p.deriv_k = -0.5 * (bessel_k(ml, x) + bessel_k(m + 1, x));
  if (!std::isfinite(p.value_i) || !std::isfinite(p.deriv_i))
    throw NumericalError("bessel_mod: overflow at large argument");
  return p;
}

ScaledK bessel_k_scaled(int m, double x) {
  if (!(x > 0.0)) throw ValidationError("bessel_k_scaled: x must be > 0");
  m = std::abs(m);
  ScaledK out;
  if (x <= 500.0) {
    const double ex = std::exp(x);
    out.value = ex * bessel_k(m, x);
    const int ml = (m >= 1) ? m - 1 : 1;
    out.deriv = -0.5 * ex * (bessel_k(ml, x) + bessel_k(m + 1, x));
    return out;
  }
  // large-argument asymptotics of e^x K_m(x)
  auto scaled = [&](int mm) {
    const double mu = 4.0 * mm * mm;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= 8; ++j) {
      term *= (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * x);
      sum += term;
    }
    return std::sqrt(kPi / (2.0 * x)) * sum;
  };
  out.value = scaled(m);
  const int ml = (m >= 1) ? m - 1 : 1;
  out.deriv = -0.5 * (scaled(ml) + scaled(m + 1));
  return out;
}

double dispersion_beta_squared(int m, double k, double b) {
  const double mm = std::abs(m);
  const double d = mm * (1.0 - b);
  return k * k * (1.0 - 4.0 / (d * d));
}

double dispersion_residual(int m, double k, double b) {
  if (m == 0) throw ValidationError("dispersion_residual: m must be nonzero");
  if (k == 0.0) throw ValidationError("dispersion_residual: k must be nonzero");
  if (b == 1.0) throw ValidationError("dispersion_residual: b = 1 is singular");
  const double mm = std::abs(m);
  const double kk = std::abs(k);

  const double b2 = dispersion_beta_squared(m, kk, b);
  // Combined singular parts: I_m'/(beta I_m) + 2/((1-b) beta^2) equals
  // mm^2 (1-b) / (k^2 (mm(1-b) - 2)) plus the regularized ratio.
  const double den = mm * (1.0 - b) - 2.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  const double rational = mm * mm * (1.0 - b) / (kk * kk * den);
  const double reg = regularized_i_ratio(static_cast<int>(mm), b2);

  const auto K = bessel_mod(static_cast<int>(mm), kk);
  const double rhs = K.deriv_k / (kk * K.value_k);
  return rational + reg - rhs;
}

KelvinModesRankine kelvin_modes_rankine(int m, double k, int count) {
  if (m == 0 || k == 0.0)
    throw ValidationError("kelvin_modes_rankine: need m != 0 and k != 0");
  if (count < 1) throw ValidationError("kelvin_modes_rankine: count >= 1");
  const double mm = std::abs(m);
  const double kk = std::abs(k);
  const double span = 2.0 / mm;  // Kelvin bound |b-1| <= 2/|m|

  auto resid = [&](double b) { return dispersion_residual(m, kk, b); };

  KelvinModesRankine out;
  auto scan_branch = [&](bool upper) {
    std::vector<double> roots;
    double delta = span;
    // geometric segments closing in on the accumulation point b = 1
    while (static_cast<int>(roots.size()) < count && delta > 1e-8) {
      const double d_in = 0.5 * delta;
      // oscillation scale: |beta| ~ 2k/(mm |1-b|); keep several samples per
      // half-period of the Bessel factor
      const double y_max = 2.0 * kk / (mm * d_in);
      int ns = 64 + static_cast<int>(std::min(2e4, 8.0 * y_max / kPi));
      std::vector<double> samples(ns);
      for (int i = 0; i < ns; ++i) {
        const double t = d_in + (delta - d_in) * i / (ns - 1.0);
        samples[i] = upper ? 1.0 + t : 1.0 - t;
      }
      if (!upper) std::reverse(samples.begin(), samples.end());
      num::RealRootSearch s;
      s.residual_tol = 1e-10;
      s.x_tol = 1e-15;
      auto rep = num::find_real_roots_on(resid, samples, s);
      for (const auto& r : rep.roots) roots.push_back(r.x);
      delta = d_in;
    }
    // order by distance from 1 descending (b_1 is the farthest root)
    std::sort(roots.begin(), roots.end(), [&](double a, double b) {
      return std::abs(a - 1.0) > std::abs(b - 1.0);
    });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                              return std::abs(a - b) < 1e-12;
                            }),
                roots.end());
    if (static_cast<int>(roots.size()) > count) roots.resize(count);
    for (double b : roots) {
      DispersionRoot dr;
      dr.b = b;
      dr.branch = upper ? DispersionBranch::above_1 : DispersionBranch::below_1;
      dr.residual = std::abs(resid(b));
      dr.beta_squared = dispersion_beta_squared(m, kk, b);
      auto& list = upper ? out.upper : out.lower;
      list.push_back(dr);
    }
  };
  scan_branch(true);
  scan_branch(false);
  return out;
}

}  // namespace vortexspec::rankine
