#include "dclp/cg.hpp"

#include <cmath>

#include "dclp/errors.hpp"

namespace dclp {

std::pair<Vec, CgReport> conjugate_gradient(
    const std::function<Vec(const Vec&)>& apply, const Vec& rhs,
    const Vec& x0, double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("conjugate_gradient: tol must be > 0");
  if (x0.size() != rhs.size())
    throw DimensionError("conjugate_gradient: x0 size mismatch");

  CgReport report;
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    report.converged = true;
    return {Vec::Zero(rhs.size()), report};
  }

  Vec x = x0;
  Vec r = x.isZero(0.0) ? rhs : Vec(rhs - apply(x));
  Vec p = r;
  double rr = r.squaredNorm();

  for (int it = 1; it <= max_iter; ++it) {
    Vec ap = apply(p);
    double curvature = p.dot(ap);
    if (std::isnan(curvature) || curvature <= 0.0)
      throw OperatorError("conjugate_gradient: operator is not SPD");
    double alpha = rr / curvature;
    x += alpha * p;
    r -= alpha * ap;
    if (it % 50 == 0) r = rhs - apply(x);
    double rr_next = r.squaredNorm();
    if (std::isnan(rr_next))
      throw OperatorError("conjugate_gradient: NaN in recurrence");
    report.iterations = it;
    report.final_rel_residual = std::sqrt(rr_next) / bnorm;
    if (report.final_rel_residual <= tol) {
      report.converged = true;
      return {x, report};
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return {x, report};
}

std::pair<Vec, CgReport> conjugate_gradient(
    const std::function<Vec(const Vec&)>& apply, const Vec& rhs, double tol,
    int max_iter) {
  return conjugate_gradient(apply, rhs, Vec::Zero(rhs.size()), tol, max_iter);
}

}  // namespace dclp
