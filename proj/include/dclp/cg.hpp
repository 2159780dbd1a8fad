#pragma once

#include <functional>
#include <utility>

#include "dclp/sparse.hpp"

namespace dclp {

struct CgReport {
  int iterations = 0;
  double final_rel_residual = 0.0;
  bool converged = false;
};

// Matrix-free conjugate gradient for a symmetric positive definite
// operator. Terminates when ||rhs - A x|| <= tol * ||rhs|| or after
// max_iter iterations; in the latter case the best iterate is returned
// with converged cleared. The true residual replaces the recurrence
// residual every 50 iterations to guard against drift.
//
// A NaN in the recurrence, or a non-positive curvature p'Ap, throws
// OperatorError: the operator violated its contract.
std::pair<Vec, CgReport> conjugate_gradient(
    const std::function<Vec(const Vec&)>& apply, const Vec& rhs,
    const Vec& x0, double tol, int max_iter);

std::pair<Vec, CgReport> conjugate_gradient(
    const std::function<Vec(const Vec&)>& apply, const Vec& rhs, double tol,
    int max_iter);

}  // namespace dclp
