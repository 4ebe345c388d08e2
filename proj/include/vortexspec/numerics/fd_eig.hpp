#pragma once

#include <functional>
#include <vector>

#include "vortexspec/common.hpp"

namespace vortexspec::num {

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL; values only),
/// returned ascending. diag has n entries, off has n-1.
std::vector<double> symmetric_tridiag_eigenvalues(std::vector<double> diag,
                                                  std::vector<double> off);

/// Sturm-Liouville pencil  -(P y')' + Q y = mu S y  on [a, b] with
/// homogeneous Dirichlet conditions, discretized by second-order central
/// differences on a uniform grid with n interior nodes. S must have one
/// sign on (a, b).
struct SLPencil {
  std::function<double(double)> P, Q, S;
};

std::vector<double> fd_generalized_eig(const SLPencil& pencil, double a,
                                       double b, int n_interior);

/// b-parameterized operator  -(P y')' + Q(x, b) y  (no pencil structure).
/// Roots in b of the discrete operator's singularity are located by counting
/// negative LDL^T pivots (Sturm sequence) and bisecting where the count
/// jumps. `samples` is the ordered list of b values to scan between.
struct SLParamOperator {
  std::function<double(double)> P;
  std::function<double(double, double)> Q;  // Q(x, b)
};

struct ParamSingularity {
  double b;
  int index_change;  // pivot-count jump across the root (usually 1)
};

std::vector<ParamSingularity> fd_param_singularities(
    const SLParamOperator& op, double a, double b_dom, int n_interior,
    const std::vector<double>& samples, int max_roots, double b_tol = 1e-12);

/// Number of negative eigenvalues of the discretized operator at fixed b
/// (negative LDL^T pivot count).
int fd_negative_index(const SLParamOperator& op, double a, double b_dom,
                      int n_interior, double b);

/// Eigenvector (interior nodes) of the pencil for a converged eigenvalue mu,
/// by inverse iteration. Used for node-count checks.
std::vector<double> fd_param_null_vector(const SLParamOperator& op, double a,
                                         double b_dom, int n_interior,
                                         double b);

}  // namespace vortexspec::num
