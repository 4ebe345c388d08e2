#include "vortexspec/numerics/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vortexspec::num {

namespace {

struct Bracket {
  double a, b, fa, fb;
};

std::optional<RealRoot> polish_bracket(const std::function<double(double)>& f,
                                       Bracket br, const RealRootSearch& s) {
  double a = br.a, b = br.b, fa = br.fa, fb = br.fb;
  const double width_tol = s.x_tol * std::max({std::abs(a), std::abs(b), 1.0});
  for (int it = 0; it < 200 && (b - a) > width_tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) {
      a = b = m;
      fa = fb = 0.0;
      break;
    }
    if ((fa < 0) != (fm < 0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  // secant polish
  double x0 = a, x1 = b, f0 = fa, f1 = fb;
  double best = std::abs(f0) < std::abs(f1) ? x0 : x1;
  double fbest = std::min(std::abs(f0), std::abs(f1));
  for (int it = 0; it < 8; ++it) {
    const double denom = f1 - f0;
    if (denom == 0.0) break;
    const double x2 = x1 - f1 * (x1 - x0) / denom;
    if (!std::isfinite(x2) || x2 < br.a - (br.b - br.a) ||
        x2 > br.b + (br.b - br.a))
      break;
    const double f2 = f(x2);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (std::abs(f2) < fbest) {
      fbest = std::abs(f2);
      best = x2;
    }
    if (fbest == 0.0) break;
  }
  if (!(fbest <= s.residual_tol)) return std::nullopt;  // pole or bad bracket
  return RealRoot{best, fbest};
}

}  // namespace

RealRootReport find_real_roots_on(const std::function<double(double)>& f,
                                  const std::vector<double>& samples,
                                  const RealRootSearch& s) {
  RealRootReport rep;
  if (samples.size() < 2) return rep;
  double xa = samples.front();
  double fa = f(xa);
  for (size_t i = 1; i < samples.size(); ++i) {
    const double xb = samples[i];
    const double fb = f(xb);
    const bool change = std::isfinite(fa) && std::isfinite(fb) &&
                        fa != 0.0 && ((fa < 0) != (fb < 0));
    if (change || fb == 0.0) {
      if (static_cast<int>(rep.roots.size()) >= s.max_roots) {
        rep.truncated = true;
        return rep;
      }
      const double mid = 0.5 * (xa + xb);
      if (s.is_pole && s.is_pole(mid)) {
        ++rep.rejected;
      } else if (fb == 0.0) {
        rep.roots.push_back({xb, 0.0});
      } else if (auto root = polish_bracket(f, {xa, xb, fa, fb}, s)) {
        rep.roots.push_back(*root);
      } else {
        ++rep.rejected;
      }
    }
    xa = xb;
    fa = fb;
  }
  return rep;
}

RealRootReport find_real_roots(const std::function<double(double)>& f,
                               const RealRootSearch& s) {
  if (!(s.hi > s.lo) || !(s.scan_step > 0))
    throw ValidationError("find_real_roots: bad bracket or step");
  std::vector<double> xs;
  for (double x = s.lo; x < s.hi; x += s.scan_step) xs.push_back(x);
  xs.push_back(s.hi);
  return find_real_roots_on(f, xs, s);
}

MullerResult muller(const std::function<Complex(Complex)>& f, Complex seed,
                    double scale, const MullerOptions& opts,
                    const std::function<bool(Complex)>& guard) {
  MullerResult res;
  auto ok = [&](Complex s) { return !guard || guard(s); };
  const double h = std::max(scale, 1e-12);
  Complex x0 = seed - h, x1 = seed + h, x2 = seed;
  if (!ok(x0) || !ok(x1) || !ok(x2)) {
    x0 = seed * (1.0 - 1e-4) + Complex(0, h * 1e-2);
    x1 = seed * (1.0 + 1e-4);
    if (!ok(x0) || !ok(x1)) return res;
  }
  Complex f0 = f(x0), f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < opts.max_iter; ++it) {
    const Complex q = (x2 - x1) / (x1 - x0);
    const Complex aa = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
    const Complex bb = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 +
                       q * q * f0;
    const Complex cc = (1.0 + q) * f2;
    const Complex disc = std::sqrt(bb * bb - 4.0 * aa * cc);
    const Complex den1 = bb + disc, den2 = bb - disc;
    const Complex den = std::abs(den1) > std::abs(den2) ? den1 : den2;
    if (std::abs(den) == 0.0) break;
    const Complex x3 = x2 - (x2 - x1) * (2.0 * cc / den);
    if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag())) break;
    if (!ok(x3)) break;
    const Complex f3 = f(x3);
    res.iterations = it + 1;
    const double step = std::abs(x3 - x2);
    x0 = x1; f0 = f1;
    x1 = x2; f1 = f2;
    x2 = x3; f2 = f3;
    if (step <= opts.step_tol * (1.0 + std::abs(x3))) {
      res.converged = true;
      break;
    }
  }
  res.root = x2;
  res.f_value = f2;
  return res;
}

namespace {

// Sum of argument increments along the segment [s0, s1], refining until every
// sub-increment is below angle_cap.
bool arg_increment(const std::function<Complex(Complex)>& f, Complex s0,
                   Complex s1, Complex f0, Complex f1, double angle_cap,
                   int depth, double& acc, std::string& note) {
  if (std::abs(f0) == 0.0 || std::abs(f1) == 0.0) {
    note = "zero on contour";
    return false;
  }
  const double d = std::arg(f1 / f0);
  if (std::abs(d) <= angle_cap) {
    acc += d;
    return true;
  }
  if (depth <= 0) {
    note = "argument jump unresolved (zero near contour?)";
    return false;
  }
  const Complex sm = 0.5 * (s0 + s1);
  const Complex fm = f(sm);
  return arg_increment(f, s0, sm, f0, fm, angle_cap, depth - 1, acc, note) &&
         arg_increment(f, sm, s1, fm, f1, angle_cap, depth - 1, acc, note);
}

}  // namespace

WindingResult winding_number(const std::function<Complex(Complex)>& f,
                             const Rect& rect, const WindingOptions& opts) {
  WindingResult res;
  const Complex corners[4] = {Complex(rect.re_lo, rect.im_lo),
                              Complex(rect.re_hi, rect.im_lo),
                              Complex(rect.re_hi, rect.im_hi),
                              Complex(rect.re_lo, rect.im_hi)};
  double acc = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Complex sa = corners[e], sb = corners[(e + 1) % 4];
    Complex prev_s = sa, prev_f = f(sa);
    for (int j = 1; j <= opts.init_per_edge; ++j) {
      const Complex s =
          sa + (sb - sa) * (static_cast<double>(j) / opts.init_per_edge);
      const Complex fs = f(s);
      if (!arg_increment(f, prev_s, s, prev_f, fs, opts.angle_cap,
                         opts.max_refine_depth, acc, res.note))
        return res;  // ok=false, note set
      prev_s = s;
      prev_f = fs;
    }
  }
  res.raw = acc / (2.0 * kPi);
  res.count = static_cast<int>(std::lround(res.raw));
  res.ok = std::abs(res.raw - res.count) < opts.integer_tol;
  if (!res.ok) res.note = "winding not integral";
  return res;
}

namespace {

void gather_roots(const MissFunction& miss, const Rect& rect,
                  const ComplexRootOptions& opts, int depth,
                  std::vector<ComplexRoot>& roots,
                  std::vector<Rect>& inconclusive);

// Roots already found inside a rect
int roots_inside(const std::vector<ComplexRoot>& roots, const Rect& rect) {
  int c = 0;
  for (const auto& r : roots)
    if (rect.contains(r.s)) ++c;
  return c;
}

// Cut coordinate near the middle of [lo, hi] staying clear of the given
// values (contours through zeros never resolve).
double clear_cut(double lo, double hi, const std::vector<double>& avoid) {
  static const double fractions[] = {0.5, 0.43, 0.57, 0.36, 0.64, 0.29, 0.71};
  double best = 0.5 * (lo + hi);
  double best_d = -1.0;
  for (double f : fractions) {
    const double c = lo + f * (hi - lo);
    double d = std::numeric_limits<double>::infinity();
    for (double v : avoid) d = std::min(d, std::abs(c - v));
    if (d > best_d) {
      best_d = d;
      best = c;
    }
    if (best_d > 0.05 * (hi - lo)) break;
  }
  return best;
}

void subdivide_or_flag(const MissFunction& miss, const Rect& rect,
                       const ComplexRootOptions& opts, int depth,
                       std::vector<ComplexRoot>& roots,
                       std::vector<Rect>& inconclusive) {
  if (depth >= opts.max_subdivision) {
    inconclusive.push_back(rect);
    return;
  }
  std::vector<double> avoid_re, avoid_im;
  for (const auto& r : roots)
    if (rect.contains(r.s)) {
      avoid_re.push_back(r.s.real());
      avoid_im.push_back(r.s.imag());
    }
  const double rm = clear_cut(rect.re_lo, rect.re_hi, avoid_re);
  const double im = clear_cut(rect.im_lo, rect.im_hi, avoid_im);
  const Rect quads[4] = {{rect.re_lo, rm, rect.im_lo, im},
                         {rm, rect.re_hi, rect.im_lo, im},
                         {rect.re_lo, rm, im, rect.im_hi},
                         {rm, rect.re_hi, im, rect.im_hi}};
  for (const auto& q : quads)
    gather_roots(miss, q, opts, depth + 1, roots, inconclusive);
}

void gather_roots(const MissFunction& miss, const Rect& rect,
                  const ComplexRootOptions& opts, int depth,
                  std::vector<ComplexRoot>& roots,
                  std::vector<Rect>& inconclusive) {
  const auto w = winding_number(miss.evaluate, rect, opts.winding);
  if (!w.ok) {
    subdivide_or_flag(miss, rect, opts, depth, roots, inconclusive);
    return;
  }
  int known = roots_inside(roots, rect);
  if (w.count == known) {
    for (auto& r : roots)
      if (rect.contains(r.s)) r.winding_verified = true;
    return;
  }
  if (w.count < known) {
    inconclusive.push_back(rect);  // should not happen for analytic misses
    return;
  }
  // Missing roots: polish from the cell center, then recheck / subdivide.
  const Complex center(0.5 * (rect.re_lo + rect.re_hi),
                       0.5 * (rect.im_lo + rect.im_hi));
  const double scale = 0.05 * rect.diameter();
  auto guard = [&](Complex s) { return miss.admissible(s); };
  const auto m = muller(miss.evaluate, center, scale, opts.muller, guard);
  bool added = false;
  if (m.converged && rect.contains(m.root)) {
    bool dup = false;
    for (const auto& r : roots)
      if (std::abs(r.s - m.root) < opts.dedup_tol * (1.0 + std::abs(m.root)))
        dup = true;
    if (!dup) {
      roots.push_back({m.root, std::abs(m.f_value), false});
      added = true;
    }
  }
  if (added && roots_inside(roots, rect) == w.count) {
    for (auto& r : roots)
      if (rect.contains(r.s)) r.winding_verified = true;
    return;
  }
  subdivide_or_flag(miss, rect, opts, depth, roots, inconclusive);
}

}  // namespace

ComplexRootReport find_complex_roots(const MissFunction& miss, const Rect& rect,
                                     const ComplexRootOptions& opts) {
  ComplexRootReport rep;
  // Seed scan: |miss| over a coarse grid, local minima become Muller seeds.
  const int nx = std::max(opts.seed_nx, 3), ny = std::max(opts.seed_ny, 3);
  std::vector<double> mag(static_cast<size_t>(nx) * ny,
                          std::numeric_limits<double>::infinity());
  std::vector<Complex> pts(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Complex s(rect.re_lo + (rect.re_hi - rect.re_lo) * i / (nx - 1.0),
                      rect.im_lo + (rect.im_hi - rect.im_lo) * j / (ny - 1.0));
      pts[j * nx + i] = s;
      if (miss.admissible(s)) mag[j * nx + i] = std::abs(miss.evaluate(s));
    }
  }
  auto guard = [&](Complex s) { return miss.admissible(s); };
  const double hx = (rect.re_hi - rect.re_lo) / (nx - 1.0);
  const double hy = (rect.im_hi - rect.im_lo) / (ny - 1.0);
  const double scale = 0.5 * std::hypot(hx, hy);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double v = mag[j * nx + i];
      if (!std::isfinite(v)) continue;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj)
        for (int di = -1; di <= 1 && is_min; ++di) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
          if (mag[jj * nx + ii] < v) is_min = false;
        }
      if (!is_min) continue;
      const auto m = muller(miss.evaluate, pts[j * nx + i], scale, opts.muller,
                            guard);
      if (!m.converged || !rect.contains(m.root) || !miss.admissible(m.root))
        continue;
      bool dup = false;
      for (const auto& r : rep.roots)
        if (std::abs(r.s - m.root) < opts.dedup_tol * (1.0 + std::abs(m.root)))
          dup = true;
      if (!dup) rep.roots.push_back({m.root, std::abs(m.f_value), false});
    }
  }
  if (opts.verify_winding)
    gather_roots(miss, rect, opts, 0, rep.roots, rep.inconclusive_cells);
  std::sort(rep.roots.begin(), rep.roots.end(), [](auto& a, auto& b) {
    if (a.s.real() != b.s.real()) return a.s.real() < b.s.real();
    return a.s.imag() < b.s.imag();
  });
  return rep;
}

}  // namespace vortexspec::num
