#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vortexspec/numerics/fd_eig.hpp"
#include "vortexspec/numerics/grids.hpp"
#include "vortexspec/numerics/ode.hpp"
#include "vortexspec/numerics/quadrature.hpp"
#include "vortexspec/numerics/roots.hpp"
#include "vortexspec/numerics/shoot.hpp"
#include "vortexspec/numerics/spline.hpp"

using namespace vortexspec;
using namespace vortexspec::num;

namespace {

// Independent power-series modified Bessel I_m (30 terms), test-only oracle.
double series_bessel_i(int m, double x) {
  double term = std::pow(0.5 * x, m);
  for (int j = 1; j <= m; ++j) term /= j;
  double sum = term;
  for (int j = 1; j <= 30; ++j) {
    term *= 0.25 * x * x / (j * (j + m));
    sum += term;
  }
  return sum;
}

OdeSystem exponential_system() {
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [](double, const Complex* y, Complex* dy) {
    dy[0] = y[1];
    dy[1] = y[0];
  };
  return sys;
}

}  // namespace

TEST_CASE("integrate: u'' = u reproduces e") {
  auto sys = exponential_system();
  const Complex y0[2] = {1.0, 1.0};
  auto res = integrate(sys, 0.0, 1.0, std::span<const Complex>(y0, 2));
  CHECK(std::abs(res.y[0] - std::exp(1.0)) < 1e-10);
  CHECK(std::abs(res.y[1] - std::exp(1.0)) < 1e-10);
}

TEST_CASE("integrate: reversal recovers the initial state") {
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [](double x, const Complex* y, Complex* dy) {
    dy[0] = y[1];
    dy[1] = -y[0] * (1.0 + 0.3 * std::sin(x));
  };
  const Complex y0[2] = {0.7, -0.2};
  auto fwd = integrate(sys, 0.0, 5.0, std::span<const Complex>(y0, 2));
  auto back = integrate(sys, 5.0, 0.0, fwd.y);
  CHECK(std::abs(back.y[0] - y0[0]) < 1e-8);
  CHECK(std::abs(back.y[1] - y0[1]) < 1e-8);
}

TEST_CASE("integrate: observed order of convergence >= 4.5") {
  auto sys = exponential_system();
  const Complex y0[2] = {1.0, 1.0};
  auto err_at = [&](double h) {
    IntegrationOptions o;
    o.fixed_step = h;
    auto res = integrate(sys, 0.0, 1.0, std::span<const Complex>(y0, 2), o);
    return std::abs(res.y[0] - std::exp(1.0));
  };
  const double e1 = err_at(1.0 / 16), e2 = err_at(1.0 / 32);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 4.5);
}

TEST_CASE("integrate: Bessel-type equation matches series oracle") {
  // u'' + u'/r - (1 + m^2/r^2) u = 0 has solution I_m(r); ratios are gauge
  // free so the Frobenius start scale drops out.
  const int m = 2;
  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [m](double r, const Complex* y, Complex* dy) {
    dy[0] = y[1];
    dy[1] = -y[1] / r + (1.0 + double(m) * m / (r * r)) * y[0];
  };
  const double r0 = 1e-4;
  const Complex y0[2] = {std::pow(r0, m), m * std::pow(r0, m - 1)};
  IntegrationOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-16;
  auto at_half = integrate(sys, r0, 0.5, std::span<const Complex>(y0, 2), o);
  auto at_one = integrate(sys, 0.5, 1.0, at_half.y, o);
  const double ratio = (at_one.y[0] / at_half.y[0]).real();
  const double oracle = series_bessel_i(m, 1.0) / series_bessel_i(m, 0.5);
  CHECK(std::abs(ratio - oracle) < 1e-8);
}

TEST_CASE("integrate: step underflow carries the failure radius") {
  OdeSystem sys;
  sys.dimension = 1;
  sys.rhs = [](double x, const Complex* y, Complex* dy) {
    dy[0] = y[0] / (1.0 - x);  // blows up at x = 1
  };
  const Complex y0[1] = {1.0};
  bool threw = false;
  try {
    integrate(sys, 0.0, 2.0, std::span<const Complex>(y0, 1));
  } catch (const StepUnderflowError& e) {
    threw = true;
    CHECK(std::abs(e.failure_radius - 1.0) < 1e-2);
  }
  CHECK(threw);
}

TEST_CASE("quad_weighted: radial weight on a 101-point grid") {
  auto g = linspace(0.0, 1.0, 101);
  std::vector<double> f(g.begin(), g.end());  // f(r) = r
  const double got = quad_weighted(g, f, QuadWeight::radial);
  CHECK(std::abs(got - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("quad_weighted: integral of sin over [0, pi]") {
  auto g = linspace(0.0, kPi, 501);
  std::vector<double> f(g.size());
  for (size_t i = 0; i < g.size(); ++i) f[i] = std::sin(g[i]);
  CHECK(std::abs(quad_weighted(g, f) - 2.0) < 1e-9);
}

TEST_CASE("quad_weighted: Gaussian circulation integrand truncated at R=8") {
  auto g = linspace(0.0, 8.0, 4001);
  std::vector<double> f(g.size());
  for (size_t i = 0; i < g.size(); ++i) f[i] = 2.0 * std::exp(-g[i] * g[i]);
  CHECK(std::abs(quad_weighted(g, f, QuadWeight::radial) - 1.0) < 1e-10);
}

TEST_CASE("quad_weighted: odd interval count and complex values") {
  auto g = linspace(0.0, 1.0, 100);  // 99 intervals
  std::vector<Complex> f(g.size());
  for (size_t i = 0; i < g.size(); ++i)
    f[i] = Complex(g[i] * g[i], std::exp(g[i]));
  const Complex got = quad_weighted(g, std::span<const Complex>(f));
  CHECK(std::abs(got.real() - 1.0 / 3.0) < 1e-8);
  CHECK(std::abs(got.imag() - (std::exp(1.0) - 1.0)) < 1e-8);
}

TEST_CASE("adaptive_simpson: smooth integrand") {
  const double got =
      adaptive_simpson([](double x) { return std::exp(-x * x) * 2.0 * x; }, 0.0,
                       8.0, 1e-12);
  CHECK(std::abs(got - 1.0) < 1e-10);
}

TEST_CASE("find_real_roots: cosine on [0, 10]") {
  RealRootSearch s;
  s.lo = 0.0;
  s.hi = 10.0;
  s.scan_step = 0.05;
  auto rep = find_real_roots([](double x) { return std::cos(x); }, s);
  REQUIRE(rep.roots.size() == 3);
  CHECK(std::abs(rep.roots[0].x - kPi / 2) < 1e-10);
  CHECK(std::abs(rep.roots[1].x - 3 * kPi / 2) < 1e-10);
  CHECK(std::abs(rep.roots[2].x - 5 * kPi / 2) < 1e-10);
}

TEST_CASE("find_real_roots: tangent poles are rejected") {
  RealRootSearch s;
  s.lo = 0.1;
  s.hi = 6.5;
  s.scan_step = 0.03;
  auto rep = find_real_roots([](double x) { return std::tan(x); }, s);
  // true roots at pi and 2 pi only; sign changes at pi/2, 3pi/2 are poles
  REQUIRE(rep.roots.size() == 2);
  CHECK(std::abs(rep.roots[0].x - kPi) < 1e-10);
  CHECK(std::abs(rep.roots[1].x - 2 * kPi) < 1e-10);
  CHECK(rep.rejected == 2);
}

TEST_CASE("find_real_roots: max_roots truncation flag") {
  RealRootSearch s;
  s.lo = 0.0;
  s.hi = 50.0;
  s.scan_step = 0.05;
  s.max_roots = 3;
  auto rep = find_real_roots([](double x) { return std::sin(x); }, s);
  CHECK(rep.truncated);
  CHECK(rep.roots.size() == 3);
}

TEST_CASE("find_complex_roots: s^2 + 1 on [-2,2]^2") {
  MissFunction miss;
  miss.evaluate = [](Complex s) { return s * s + 1.0; };
  Rect rect{-2, 2, -2, 2};
  auto rep = find_complex_roots(miss, rect);
  REQUIRE(rep.roots.size() == 2);
  CHECK(std::abs(rep.roots[0].s - Complex(0, -1)) < 1e-9);
  CHECK(std::abs(rep.roots[1].s - Complex(0, 1)) < 1e-9);
  CHECK(rep.roots[0].winding_verified);
  CHECK(rep.roots[1].winding_verified);
  CHECK(rep.inconclusive_cells.empty());
}

TEST_CASE("find_complex_roots: shifted product polynomial") {
  MissFunction miss;
  miss.evaluate = [](Complex s) {
    return (s - Complex(0.3, 0.4)) * (s + 1.0);
  };
  Rect rect{-2, 2, -2, 2};
  auto rep = find_complex_roots(miss, rect);
  REQUIRE(rep.roots.size() == 2);
  CHECK(std::abs(rep.roots[0].s - Complex(-1, 0)) < 1e-9);
  CHECK(std::abs(rep.roots[1].s - Complex(0.3, 0.4)) < 1e-9);
}

TEST_CASE("find_complex_roots: rectangle without roots") {
  MissFunction miss;
  miss.evaluate = [](Complex s) { return s * s + 1.0; };
  Rect rect{2.5, 4.0, -1.0, 1.0};
  auto rep = find_complex_roots(miss, rect);
  CHECK(rep.roots.empty());
  auto w = winding_number(miss.evaluate, rect);
  CHECK(w.ok);
  CHECK(w.count == 0);
}

TEST_CASE("winding_number: integrality and refinement invariance") {
  auto f = [](Complex s) { return (s - Complex(0.1, 0.2)) * (s - 0.5) /
                                  (1.0 + 0.1 * s); };
  Rect rect{-1, 1, -1, 1};
  WindingOptions coarse;
  coarse.init_per_edge = 4;
  WindingOptions fine;
  fine.init_per_edge = 32;
  auto wc = winding_number(f, rect, coarse);
  auto wf = winding_number(f, rect, fine);
  REQUIRE(wc.ok);
  REQUIRE(wf.ok);
  CHECK(wc.count == 2);
  CHECK(wf.count == 2);
  CHECK(std::abs(wc.raw - wc.count) < 1e-6);
}

namespace {

// Manufactured two-sided shooting problem: B(r, s) is rigged so that
// u*(r) = r e^{-r^2/2} solves the flux equation exactly at s = s*.
struct Manufactured {
  double m2 = 4.0, k2 = 1.0;
  Complex s_star{0.25, 0.6};

  double A(double r) const { return r * r / (m2 + k2 * r * r); }
  double Ap(double r) const {
    const double d = m2 + k2 * r * r;
    return 2.0 * r * m2 / (d * d);
  }
  // g = (A u*~)' / u* with u* = r e^{-r^2/2}, u*~ = u*' + u*/r
  double g(double r) const {
    const double a = A(r), ap = Ap(r);
    // u*~ = e^{-r^2/2} (2 - r^2); derivative of (A u*~):
    // (A u*~)' = ap u*~ + a d/dr[e^{-r^2/2}(2 - r^2)]
    const double e = std::exp(-0.5 * r * r);
    const double ut = e * (2.0 - r * r);
    const double dut = e * (-r * (2.0 - r * r) - 2.0 * r);
    return (ap * ut + a * dut) / (r * e);
  }
  Complex B(double r, Complex s) const {
    return Complex(g(r), 0.0) + (s - s_star) * (2.0 + 1.0 / (1.0 + r * r));
  }

  Complex miss(Complex s) const {
    SecondOrderFluxProblem prob;
    prob.A = [this](double r) { return A(r); };
    prob.B = [this, s](double r) { return B(r, s); };
    auto sys = flux_system(prob);
    TwoSidedSpec spec;
    spec.r0 = 1e-4;
    spec.r_mid = 1.5;
    spec.R = 12.0;
    // left: u ~ r (regular branch), q = A u~ with u~ = 2 at leading order
    spec.left_init = {Complex(spec.r0, 0), Complex(2.0 * A(spec.r0), 0)};
    // right: decaying branch of the manufactured solution, with the Gaussian
    // factor scaled out so the state starts at O(1)
    spec.right_init = {Complex(spec.R, 0),
                       Complex(A(spec.R) * (2.0 - spec.R * spec.R), 0)};
    spec.mismatch = [](std::span<const Complex> yl,
                       std::span<const Complex> yr) {
      return yl[0] * yr[1] - yr[0] * yl[1];
    };
    return shoot_two_sided(sys, spec);
  }
};

}  // namespace

TEST_CASE("shoot_two_sided: manufactured eigenvalue is a simple zero") {
  // The rigged coefficient is a self-adjoint pencil in s, so further real
  // shifted modes sit to the left of s*; the window isolates s* itself.
  Manufactured man;
  MissFunction miss;
  miss.evaluate = [&](Complex s) { return man.miss(s); };
  Rect rect{0.0, 0.6, 0.3, 0.9};
  ComplexRootOptions opts;
  opts.seed_nx = 9;
  opts.seed_ny = 9;
  auto rep = find_complex_roots(miss, rect, opts);
  REQUIRE(rep.roots.size() == 1);
  CHECK(std::abs(rep.roots[0].s - man.s_star) < 1e-7);
  CHECK(rep.roots[0].winding_verified);
  CHECK(rep.inconclusive_cells.empty());
}

TEST_CASE("shoot_two_sided: mismatch zero is invariant under shot rescaling") {
  Manufactured man;
  // rescaling either initial state multiplies the (normalized) mismatch by a
  // phase/magnitude only at fixed s; the zero location cannot move. Compare
  // the mismatch at s* for scaled and unscaled right shots.
  auto miss_scaled = [&](Complex s, double scale) {
    SecondOrderFluxProblem prob;
    prob.A = [&](double r) { return man.A(r); };
    prob.B = [&, s](double r) { return man.B(r, s); };
    auto sys = flux_system(prob);
    TwoSidedSpec spec;
    spec.r0 = 1e-4;
    spec.r_mid = 1.5;
    spec.R = 12.0;
    spec.left_init = {Complex(spec.r0, 0), Complex(2.0 * man.A(spec.r0), 0)};
    spec.right_init = {scale * Complex(spec.R, 0),
                       scale * Complex(man.A(spec.R) *
                                       (2.0 - spec.R * spec.R), 0)};
    spec.mismatch = [](std::span<const Complex> yl,
                       std::span<const Complex> yr) {
      return yl[0] * yr[1] - yr[0] * yl[1];
    };
    return shoot_two_sided(sys, spec);
  };
  const Complex at_star_1 = miss_scaled(man.s_star, 1.0);
  const Complex at_star_7 = miss_scaled(man.s_star, 7.0);
  CHECK(std::abs(at_star_1) < 1e-6);
  CHECK(std::abs(at_star_7) < 1e-6);
  const Complex off_1 = miss_scaled(man.s_star + 0.3, 1.0);
  const Complex off_7 = miss_scaled(man.s_star + 0.3, 7.0);
  CHECK(std::abs(off_1) > 1e-4);
  // normalized mismatch is scale free up to sign/phase of the scale
  CHECK(std::abs(std::abs(off_7) - std::abs(off_1)) < 1e-8);
}

TEST_CASE("shoot_two_sided: swapping shot roles flips the mismatch sign") {
  Manufactured man;
  SecondOrderFluxProblem prob;
  const Complex s = man.s_star + Complex(0.2, -0.1);
  prob.A = [&](double r) { return man.A(r); };
  prob.B = [&, s](double r) { return man.B(r, s); };
  auto sys = flux_system(prob);
  TwoSidedSpec spec;
  spec.r0 = 1e-4;
  spec.r_mid = 1.5;
  spec.R = 12.0;
  spec.left_init = {Complex(spec.r0, 0), Complex(2.0 * man.A(spec.r0), 0)};
  spec.right_init = {Complex(spec.R, 0),
                     Complex(man.A(spec.R) * (2.0 - spec.R * spec.R), 0)};
  auto wron = [](std::span<const Complex> ya, std::span<const Complex> yb) {
    return ya[0] * yb[1] - yb[0] * ya[1];
  };
  spec.mismatch = wron;
  const Complex fwd = shoot_two_sided(sys, spec);
  spec.mismatch = [&](std::span<const Complex> yl,
                      std::span<const Complex> yr) { return wron(yr, yl); };
  const Complex swapped = shoot_two_sided(sys, spec);
  CHECK(std::abs(fwd + swapped) < 1e-12 * std::abs(fwd));
}

TEST_CASE("fd_generalized_eig: constant-coefficient pencil vs closed form") {
  // -y'' = mu y on (0, pi): mu_n = n^2
  SLPencil p;
  p.P = [](double) { return 1.0; };
  p.Q = [](double) { return 0.0; };
  p.S = [](double) { return 1.0; };
  auto mu = fd_generalized_eig(p, 0.0, kPi, 1999);
  REQUIRE(mu.size() >= 5);
  for (int n = 1; n <= 5; ++n) {
    const double expected = double(n) * n;
    CHECK(std::abs(mu[n - 1] - expected) / expected < 1e-5);
  }
}

TEST_CASE("fd_generalized_eig: grid doubling shows order-2 convergence") {
  SLPencil p;
  p.P = [](double) { return 1.0; };
  p.Q = [](double) { return 0.0; };
  p.S = [](double) { return 1.0; };
  auto coarse = fd_generalized_eig(p, 0.0, kPi, 250);
  auto fine = fd_generalized_eig(p, 0.0, kPi, 501);  // h halved
  const double e1 = std::abs(coarse[2] - 9.0);
  const double e2 = std::abs(fine[2] - 9.0);
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("fd_param_singularities: eigenvalues as parameter roots") {
  // -y'' - b y singular exactly at b = n^2 on (0, pi)
  SLParamOperator op;
  op.P = [](double) { return 1.0; };
  op.Q = [](double, double b) { return -b; };
  auto samples = linspace(0.5, 10.5, 41);
  auto roots = fd_param_singularities(op, 0.0, kPi, 2000, samples, 10);
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(roots[0].b - 1.0) < 1e-4);
  CHECK(std::abs(roots[1].b - 4.0) < 2e-4);
  CHECK(std::abs(roots[2].b - 9.0) < 5e-4);
  // null vector of the n=2 root has one interior sign change
  auto v = fd_param_null_vector(op, 0.0, kPi, 2000, roots[1].b);
  int changes = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] * v[i] < 0.0) ++changes;
  CHECK(changes == 1);
}

TEST_CASE("CubicSpline: reproduces smooth functions and derivatives") {
  auto x = linspace(0.0, 3.0, 60);
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = std::exp(-x[i]);
  CubicSpline s(x, y, -1.0);  // clamped left slope
  CHECK(std::abs(s(1.234) - std::exp(-1.234)) < 1e-6);
  CHECK(std::abs(s.derivative(1.234) + std::exp(-1.234)) < 1e-4);
  // integral of e^{-x} x dx from 0 to 2: 1 - 3 e^{-2}
  const double got = s.integral_weighted(2.0, 1);
  CHECK(std::abs(got - (1.0 - 3.0 * std::exp(-2.0))) < 1e-6);
}

TEST_CASE("fd_derivative_4: fourth-order accuracy on a log grid") {
  auto worst_at = [](int n) {
    auto x = logspace(0.1, 10.0, n);
    std::vector<double> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = std::sin(x[i]);
    auto d = fd_derivative_4(x, y);
    double worst = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(d[i] - std::cos(x[i])));
    return worst;
  };
  const double e1 = worst_at(400), e2 = worst_at(800);
  CHECK(e1 < 1e-4);
  CHECK(std::log2(e1 / e2) > 3.5);  // fourth order
}
