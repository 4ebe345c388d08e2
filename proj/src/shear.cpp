#include "vortexspec/shear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vortexspec/numerics/ode.hpp"
#include "vortexspec/numerics/quadrature.hpp"
#include "vortexspec/numerics/roots.hpp"

namespace vortexspec::shear {

namespace {

constexpr double kIdentityTol = 1e-6;

num::IntegrationOptions channel_opts(double L, bool trace = false) {
  num::IntegrationOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-14;
  o.keep_trace = trace;
  o.max_steps = 60000;  // near-singular gamma must fail fast, not stall
  if (trace) o.max_step = L / 400.0;
  return o;
}

// One-sided shot for the nu = s^2 problems (real coefficients):
// state (u, w = rho u'), u(0) = 0, w(0) = rho(0).
struct RealChannelShot {
  const ShearProfile* p;
  double k;
  bool boussinesq;

  num::OdeSystem system(double nu) const {
    num::OdeSystem sys;
    sys.dimension = 2;
    const ShearProfile* pp = p;
    const double kk = k;
    if (boussinesq) {
      sys.rhs = [pp, kk, nu](double z, const Complex* y, Complex* dy) {
        dy[0] = y[1];
        dy[1] = kk * kk * (1.0 + pp->n_squared(z) / nu) * y[0];
      };
    } else {
      sys.rhs = [pp, kk, nu](double z, const Complex* y, Complex* dy) {
        const double rho = pp->rho(z), drho = pp->rho_prime(z);
        dy[0] = y[1] / rho;
        dy[1] = (kk * kk * rho - (kk * kk * pp->g / nu) * drho) * y[0];
      };
    }
    return sys;
  }

  double miss(double nu) const {
    auto sys = system(nu);
    const Complex y0[2] = {0.0, boussinesq ? 1.0 : p->rho(0.0)};
    auto res = num::integrate(sys, 0.0, p->L, std::span<const Complex>(y0, 2),
                              channel_opts(p->L));
    return res.y[0].real();
  }
};

// Identity residual evaluated on a converged eigenfunction trace.
double rt_identity_residual(const ShearProfile& p, double k, double nu,
                            bool boussinesq,
                            const std::vector<num::TracePoint>& tr) {
  std::vector<double> z(tr.size());
  std::vector<double> a(tr.size()), b(tr.size()), c(tr.size());
  for (size_t i = 0; i < tr.size(); ++i) {
    z[i] = tr[i].x;
    const double u = tr[i].y[0].real();
    const double w = tr[i].y[1].real();
    if (boussinesq) {
      a[i] = w * w;
      b[i] = k * k * u * u;
      c[i] = k * k * p.n_squared(z[i]) * u * u;  // + (1/nu) c term
    } else {
      const double rho = p.rho(z[i]);
      const double up = w / rho;
      a[i] = rho * up * up;
      b[i] = k * k * rho * u * u;
      c[i] = -k * k * p.g * p.rho_prime(z[i]) * u * u;  // + (1/nu) c term
    }
  }
  const double ia = num::quad_weighted(z, a);
  const double ib = num::quad_weighted(z, b);
  const double ic = num::quad_weighted(z, c);
  const double lhs = ia + ib + ic / nu;
  const double scale = ia + ib + std::abs(ic / nu);
  return std::abs(lhs) / std::max(scale, 1e-300);
}

std::vector<ChannelEigenpair> rt_solve(const ShearProfile& p, double k,
                                       int n_max, bool boussinesq) {
  if (k == 0.0) throw ValidationError("rt eigensolve: k must be nonzero");
  if (n_max < 1) return {};
  RealChannelShot shot{&p, k, boussinesq};

  // Rayleigh-quotient bound for nu = s^2
  double numax = 0.0;
  const int nscan = 801;
  for (int i = 0; i < nscan; ++i) {
    const double z = p.L * i / (nscan - 1.0);
    if (boussinesq) {
      numax = std::max(numax, std::abs(p.n_squared(z)));
    } else {
      numax = std::max(numax, p.g * std::abs(p.rho_prime(z)) / p.rho(z));
    }
  }
  if (numax == 0.0) return {};
  numax *= 1.05;

  // geometric sample sets accumulating at nu = 0 from both sides
  auto geometric = [&](double sign) {
    std::vector<double> v;
    for (double x = numax; x > numax * 1e-9; x *= 0.93) v.push_back(sign * x);
    if (sign > 0) std::reverse(v.begin(), v.end());
    return v;
  };
  num::RealRootSearch search;
  search.residual_tol = 1e-7;  // the miss is O(1); roots polished below
  search.x_tol = 1e-15;

  std::vector<double> roots;
  auto miss = [&](double nu) { return shot.miss(nu); };
  for (double sign : {+1.0, -1.0}) {
    auto rep = num::find_real_roots_on(miss, geometric(sign), search);
    for (const auto& r : rep.roots) roots.push_back(r.x);
  }
  // order: unstable (nu > 0) by decreasing s, then oscillatory by |s|
  std::sort(roots.begin(), roots.end(), [](double a, double b) {
    if ((a > 0) != (b > 0)) return a > 0;
    return std::abs(a) > std::abs(b);
  });
  if (static_cast<int>(roots.size()) > n_max) roots.resize(n_max);

  std::vector<ChannelEigenpair> out;
  for (double nu : roots) {
    auto sys = shot.system(nu);
    const Complex y0[2] = {0.0, boussinesq ? 1.0 : p.rho(0.0)};
    auto res = num::integrate(sys, 0.0, p.L, std::span<const Complex>(y0, 2),
                              channel_opts(p.L, true));
    ChannelEigenpair pair;
    pair.k = k;
    pair.equation_tag = boussinesq ? EquationTag::rt_boussinesq : EquationTag::rt;
    pair.s = nu > 0 ? Complex(std::sqrt(nu), 0.0)
                    : Complex(0.0, std::sqrt(-nu));
    pair.residual = rt_identity_residual(p, k, nu, boussinesq, res.trace);
    double umax = 0.0;
    for (const auto& t : res.trace) umax = std::max(umax, std::abs(t.y[0]));
    double scale = 1.0 / umax;
    for (const auto& t : res.trace) {
      if (std::abs(t.y[0]) > 1e-3 * umax) {
        if (t.y[0].real() < 0.0) scale = -scale;
        break;
      }
    }
    for (const auto& t : res.trace) {
      pair.z.push_back(t.x);
      pair.u_z.push_back(scale * t.y[0]);
      const double rho = boussinesq ? 1.0 : p.rho(t.x);
      pair.u_z_prime.push_back(scale * t.y[1] / rho);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

// Complex shooting for the gamma-dependent problems.
struct ComplexChannelShot {
  const ShearProfile* p;
  double k;
  bool stratified;  // Taylor-Goldstein when true, Rayleigh otherwise

  num::OdeSystem system(Complex s) const {
    num::OdeSystem sys;
    sys.dimension = 2;
    const ShearProfile* pp = p;
    const double kk = k;
    if (!stratified) {
      sys.rhs = [pp, kk, s](double z, const Complex* y, Complex* dy) {
        const Complex gamma = s + Complex(0, kk) * pp->U(z);
        dy[0] = y[1];
        dy[1] = (kk * kk + Complex(0, kk) * pp->U_pprime(z) / gamma) * y[0];
      };
    } else {
      sys.rhs = [pp, kk, s](double z, const Complex* y, Complex* dy) {
        const double rho = pp->rho(z), drho = pp->rho_prime(z);
        const double du = pp->U_prime(z), ddu = pp->U_pprime(z);
        const Complex gamma = s + Complex(0, kk) * pp->U(z);
        const double rhoUpp = drho * du + rho * ddu;  // (rho U')'
        dy[0] = y[1] / rho;
        dy[1] = (kk * kk * rho + Complex(0, kk) * rhoUpp / gamma -
                 kk * kk * pp->g * drho / (gamma * gamma)) *
                y[0];
      };
    }
    return sys;
  }

  Complex miss(Complex s) const {
    auto sys = system(s);
    const Complex y0[2] = {0.0, stratified ? p->rho(0.0) : 1.0};
    try {
      auto res = num::integrate(sys, 0.0, p->L, std::span<const Complex>(y0, 2),
                                channel_opts(p->L));
      return res.y[0];
    } catch (const NumericalError&) {
      // too close to the continuous spectrum; report as inadmissible
      return Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    }
  }
};

// Rayleigh/TG integral identity residual on the trace.
double gamma_identity_residual(const ShearProfile& p, double k, Complex s,
                               bool stratified,
                               const std::vector<num::TracePoint>& tr) {
  std::vector<double> z(tr.size());
  std::vector<double> pos(tr.size());
  std::vector<Complex> mix(tr.size());
  for (size_t i = 0; i < tr.size(); ++i) {
    z[i] = tr[i].x;
    const Complex u = tr[i].y[0];
    const double rho = stratified ? p.rho(z[i]) : 1.0;
    const Complex up = tr[i].y[1] / rho;
    const Complex gamma = s + Complex(0, k) * p.U(z[i]);
    const double u2 = std::norm(u);
    pos[i] = rho * (std::norm(up) + k * k * u2);
    if (stratified) {
      const double rhoUpp =
          p.rho_prime(z[i]) * p.U_prime(z[i]) + rho * p.U_pprime(z[i]);
      mix[i] = Complex(0, k) * rhoUpp * u2 / gamma -
               k * k * p.g * p.rho_prime(z[i]) * u2 / (gamma * gamma);
    } else {
      mix[i] = Complex(0, k) * p.U_pprime(z[i]) * u2 / gamma;
    }
  }
  const double ipos = num::quad_weighted(z, pos);
  const Complex imix = num::quad_weighted(z, std::span<const Complex>(mix));
  return std::abs(ipos + imix) / std::max(ipos, 1e-300);
}

std::vector<ChannelEigenpair> gamma_solve(const ShearProfile& p, double k,
                                          const SearchRegion& region,
                                          bool stratified) {
  if (k == 0.0) throw ValidationError("eigensolve: k must be nonzero");
  ComplexChannelShot shot{&p, k, stratified};

  num::MissFunction miss;
  miss.evaluate = [&](Complex s) { return shot.miss(s); };
  const double strip = region.re_exclusion;
  miss.domain_guard = [strip](Complex s) { return std::abs(s.real()) >= strip; };

  std::vector<ChannelEigenpair> out;
  auto handle_half = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    // keep seeds clear of the near-singular band along the imaginary axis
    const double inset = 0.02 * std::max(std::abs(lo), std::abs(hi));
    num::Rect rect{lo < 0 ? lo : std::max(lo, inset),
                   hi > 0 ? hi : std::min(hi, -inset), region.im_lo,
                   region.im_hi};
    if (!(rect.re_hi > rect.re_lo)) return;
    num::ComplexRootOptions opts;
    opts.seed_nx = 21;
    opts.seed_ny = 41;
    opts.verify_winding = false;  // verified per root below
    auto rep = num::find_complex_roots(miss, rect, opts);
    for (auto& root : rep.roots) {
      const double hw = std::max(1e-3, 0.02 * rect.diameter());
      num::Rect local{root.s.real() - hw, root.s.real() + hw,
                      root.s.imag() - hw, root.s.imag() + hw};
      local.re_lo = std::max(local.re_lo, lo < 0 ? lo : strip);
      local.re_hi = std::min(local.re_hi, hi > 0 ? hi : -strip);
      const auto w = num::winding_number(miss.evaluate, local);
      root.winding_verified = w.ok && w.count >= 1;
    }
    for (const auto& root : rep.roots) {
      auto sys = shot.system(root.s);
      const Complex y0[2] = {0.0, stratified ? p.rho(0.0) : 1.0};
      auto res = num::integrate(sys, 0.0, p.L, std::span<const Complex>(y0, 2),
                                channel_opts(p.L, true));
      const double identity =
          gamma_identity_residual(p, k, root.s, stratified, res.trace);
      if (identity > kIdentityTol) continue;  // spurious polish artifact
      ChannelEigenpair pair;
      pair.k = k;
      pair.s = root.s;
      pair.equation_tag =
          stratified ? EquationTag::taylor_goldstein : EquationTag::rayleigh;
      pair.residual = identity;
      pair.winding_verified = root.winding_verified;
      double umax = 0.0;
      for (const auto& t : res.trace) umax = std::max(umax, std::abs(t.y[0]));
      Complex scale(1.0 / umax, 0.0);
      for (const auto& t : res.trace) {
        if (std::abs(t.y[0]) > 1e-3 * umax) {
          scale *= std::conj(t.y[0]) / std::abs(t.y[0]);
          break;
        }
      }
      for (const auto& t : res.trace) {
        pair.z.push_back(t.x);
        pair.u_z.push_back(scale * t.y[0]);
        const double rho = stratified ? p.rho(t.x) : 1.0;
        pair.u_z_prime.push_back(scale * t.y[1] / rho);
      }
      out.push_back(std::move(pair));
    }
  };
  handle_half(region.re_lo, -strip);
  handle_half(strip, region.re_hi);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.s.real() > b.s.real();
  });
  return out;
}

}  // namespace

double ShearProfile::max_abs_U() const {
  double m = 0.0;
  for (int i = 0; i <= 400; ++i)
    m = std::max(m, std::abs(U(L * i / 400.0)));
  return m;
}

ShearProfile still_profile(double L) {
  ShearProfile p;
  p.U = [](double) { return 0.0; };
  p.U_prime = [](double) { return 0.0; };
  p.U_pprime = [](double) { return 0.0; };
  p.rho = [](double) { return 1.0; };
  p.rho_prime = [](double) { return 0.0; };
  p.g = 1.0;
  p.L = L;
  return p;
}

std::string to_string(EquationTag tag) {
  switch (tag) {
    case EquationTag::rt: return "rt";
    case EquationTag::rt_boussinesq: return "rt_boussinesq";
    case EquationTag::rayleigh: return "rayleigh";
    case EquationTag::taylor_goldstein: return "taylor_goldstein";
  }
  return "rt";
}

std::vector<ChannelEigenpair> rt_eigs_boussinesq(const ShearProfile& p,
                                                 double k, int n_max) {
  return rt_solve(p, k, n_max, true);
}

std::vector<ChannelEigenpair> rt_eigs_full(const ShearProfile& p, double k,
                                           int n_max) {
  return rt_solve(p, k, n_max, false);
}

InflectionReport rayleigh_inflection_check(const ShearProfile& p) {
  InflectionReport rep;
  const int n = 2001;
  double zp = 0.0, fp = p.U_pprime(0.0);
  for (int i = 1; i < n; ++i) {
    const double z = p.L * i / (n - 1.0);
    const double f = p.U_pprime(z);
    if (fp != 0.0 && f != 0.0 && (fp < 0) != (f < 0)) {
      rep.can_be_unstable = true;
      rep.sign_change_points.push_back(zp + (z - zp) * fp / (fp - f));
    }
    if (f != 0.0) {
      zp = z;
      fp = f;
    }
  }
  return rep;
}

SearchRegion default_search_region(const ShearProfile& p, double k) {
  const double umax = p.max_abs_U();
  const double half = std::max(std::abs(k) * umax, 0.5);
  SearchRegion r;
  r.re_lo = -half;
  r.re_hi = half;
  r.im_lo = -half - 1.0;
  r.im_hi = half + 1.0;
  return r;
}

std::vector<ChannelEigenpair> rayleigh_eigensolve(const ShearProfile& p,
                                                  double k,
                                                  const SearchRegion& region) {
  return gamma_solve(p, k, region, false);
}

std::vector<ChannelEigenpair> taylor_goldstein_eigensolve(
    const ShearProfile& p, double k, const SearchRegion& region) {
  return gamma_solve(p, k, region, true);
}

MilesHowardReport miles_howard_report(const ShearProfile& p) {
  MilesHowardReport rep;
  rep.ri_min = std::numeric_limits<double>::infinity();
  const int n = 2001;
  for (int i = 0; i < n; ++i) {
    const double z = p.L * i / (n - 1.0);
    const double n2 = p.n_squared(z);
    const double du = p.U_prime(z);
    double ri;
    if (du == 0.0) {
      ri = n2 >= 0.0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    } else {
      ri = n2 / (du * du);
    }
    rep.ri_min = std::min(rep.ri_min, ri);
    if (i % 20 == 0) rep.ri.emplace_back(z, ri);
  }
  rep.stable_certified = rep.ri_min >= 0.25;
  return rep;
}

double howard_substitution_residual(const ChannelEigenpair& pair,
                                    const ShearProfile& p) {
  if (pair.z.size() < 3 || pair.z.size() != pair.u_z.size() ||
      pair.z.size() != pair.u_z_prime.size())
    throw ValidationError("howard_substitution_residual: incomplete eigenpair");
  const double k = pair.k;
  const Complex s = pair.s;
  const size_t n = pair.z.size();
  std::vector<double> num_int(n), den_int(n);
  Complex prev_sqrt;
  for (size_t i = 0; i < n; ++i) {
    const double z = pair.z[i];
    const Complex gamma = s + Complex(0, k) * p.U(z);
    if (std::abs(gamma) < 1e-12)
      throw NumericalError("howard_substitution_residual: gamma vanishes");
    Complex root = std::sqrt(gamma);
    if (i > 0) {
      // continuous branch along z; a flip that still leaves a large jump
      // means gamma wound around the origin between samples
      if (std::abs(root - prev_sqrt) > std::abs(root + prev_sqrt)) root = -root;
      const double jump = std::abs(root - prev_sqrt);
      if (jump > 0.5 * std::abs(root) + 0.5 * std::abs(prev_sqrt))
        throw NumericalError(
            "howard_substitution_residual: branch cut crossing");
    }
    prev_sqrt = root;
    const double rho = p.rho(z);
    const double du = p.U_prime(z);
    const Complex dgamma = Complex(0, k) * du;
    const Complex v = pair.u_z[i] / root;
    const Complex vp = pair.u_z_prime[i] / root -
                       0.5 * pair.u_z[i] * dgamma / (root * gamma);
    const double v2 = std::norm(v);
    const double grad = rho * (std::norm(vp) + k * k * v2);
    const double strat = k * k * rho / std::norm(gamma) *
                         (p.n_squared(z) - 0.25 * du * du) * v2;
    const double strat_abs = k * k * rho / std::norm(gamma) *
                             (std::abs(p.n_squared(z)) + 0.25 * du * du) * v2;
    num_int[i] = grad + strat;
    den_int[i] = grad + strat_abs;
  }
  const double lhs = num::quad_weighted(pair.z, num_int);
  const double scale = num::quad_weighted(pair.z, den_int);
  return std::abs(lhs) / std::max(scale, 1e-300);
}

SquireMode squire_transform(double k1, double k2, Complex sigma, double g) {
  if (k1 == 0.0) throw ValidationError("squire_transform: k1 must be nonzero");
  SquireMode m;
  m.k = std::hypot(k1, k2);
  m.s = (m.k / k1) * sigma;
  m.g_equiv = (m.k * m.k) / (k1 * k1) * g;
  return m;
}

}  // namespace vortexspec::shear
