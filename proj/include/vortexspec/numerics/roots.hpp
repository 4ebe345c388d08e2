#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::num {

// ---------------------------------------------------------------------------
// Real roots: scan + bisection + secant polish
// ---------------------------------------------------------------------------

struct RealRoot {
  double x;
  double residual;  // |f(x)|
};

struct RealRootSearch {
  double lo = 0.0;
  double hi = 1.0;
  double scan_step = 1e-2;
  int max_roots = 1 << 20;
  double residual_tol = 1e-9;    // roots polished past this are kept
  double x_tol = 1e-13;          // bisection width target (relative)
  // Optional pole detector: sign changes at x with is_pole(x) true are
  // discarded. Poles are also rejected a posteriori when |f| fails to drop.
  std::function<bool(double)> is_pole;
};

struct RealRootReport {
  std::vector<RealRoot> roots;
  bool truncated = false;  // max_roots hit
  int rejected = 0;        // sign changes identified as poles
};

RealRootReport find_real_roots(const std::function<double(double)>& f,
                               const RealRootSearch& search);

/// Same scan machinery on an explicit list of sample abscissae (callers build
/// geometric refinements toward accumulation points with this).
RealRootReport find_real_roots_on(const std::function<double(double)>& f,
                                  const std::vector<double>& samples,
                                  const RealRootSearch& search);

// ---------------------------------------------------------------------------
// Complex roots: Muller iteration + argument-principle verification
// ---------------------------------------------------------------------------

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
  bool contains(Complex s) const {
    return s.real() >= re_lo && s.real() <= re_hi && s.imag() >= im_lo &&
           s.imag() <= im_hi;
  }
  double diameter() const { return std::abs(Complex(re_hi - re_lo, im_hi - im_lo)); }
};

/// Analytic mismatch plus an admissibility guard (analyticity domain).
struct MissFunction {
  std::function<Complex(Complex)> evaluate;
  std::function<bool(Complex)> domain_guard;  // empty = everywhere admissible
  bool admissible(Complex s) const { return !domain_guard || domain_guard(s); }
};

struct MullerOptions {
  int max_iter = 80;
  double step_tol = 1e-12;  // relative |Δs|
};

struct MullerResult {
  Complex root{};
  Complex f_value{};
  bool converged = false;
  int iterations = 0;
};

MullerResult muller(const std::function<Complex(Complex)>& f, Complex seed,
                    double scale, const MullerOptions& opts = {},
                    const std::function<bool(Complex)>& guard = {});

struct WindingOptions {
  double angle_cap = 1.2;       // max |Δarg| per boundary segment (rad)
  int max_refine_depth = 14;
  int init_per_edge = 8;
  double integer_tol = 1e-6;
};

struct WindingResult {
  int count = 0;
  double raw = 0.0;
  bool ok = false;
  std::string note;  // set when the contour was suspicious
};

/// Argument-principle winding number of f around the rectangle boundary.
WindingResult winding_number(const std::function<Complex(Complex)>& f,
                             const Rect& rect, const WindingOptions& opts = {});

struct ComplexRootOptions {
  int seed_nx = 41;
  int seed_ny = 41;
  double dedup_tol = 1e-8;
  double residual_factor = 1e-7;  // accept |f| <= factor * median seed |f|
  int max_subdivision = 4;
  bool verify_winding = true;
  MullerOptions muller;
  WindingOptions winding;
};

struct ComplexRoot {
  Complex s;
  double residual;
  bool winding_verified = false;
};

struct ComplexRootReport {
  std::vector<ComplexRoot> roots;
  std::vector<Rect> inconclusive_cells;  // winding/root-count mismatch
};

ComplexRootReport find_complex_roots(const MissFunction& miss, const Rect& rect,
                                     const ComplexRootOptions& opts = {});

}  // namespace vortexspec::num
