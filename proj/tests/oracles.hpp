// Independent reference implementations used as test oracles. Everything
// here is deliberately naive and dense so it shares no code path with
// the library.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "dclp/ipm.hpp"
#include "dclp/model.hpp"
#include "dclp/sparse.hpp"

namespace oracle {

using dclp::Mat;
using dclp::Vec;

// Dense solve of the full five-block Newton system; recovers all blocks
// at once with a pivoted LU.
inline dclp::Direction dense_newton_solve(const dclp::StandardLp& lp,
                                          const dclp::Iterate& it,
                                          const dclp::Residuals& r) {
  const int n = lp.n(), m = lp.m(), l = lp.n_upper();
  const int dim = 2 * n + m + 2 * l;
  // variable layout: dx (n) | dy (m) | dv (l) | dz (n) | dw (l)
  const int ox = 0, oy = n, ov = n + m, oz = n + m + l, ow = 2 * n + m + l;
  Mat big = Mat::Zero(dim, dim);
  Vec rhs(dim);
  Mat a = dclp::to_dense(lp.a);

  int row = 0;
  big.block(row, ox, m, n) = a;
  rhs.segment(row, m) = r.rb;
  row += m;
  big.block(row, oy, n, m) = a.transpose();
  big.block(row, oz, n, n) = Mat::Identity(n, n);
  for (int t = 0; t < l; ++t) big(row + lp.upper_set[t], ow + t) = -1.0;
  rhs.segment(row, n) = r.rc;
  row += n;
  for (int t = 0; t < l; ++t) {
    big(row + t, ox + lp.upper_set[t]) = 1.0;
    big(row + t, ov + t) = 1.0;
  }
  rhs.segment(row, l) = r.ru;
  row += l;
  for (int j = 0; j < n; ++j) {
    big(row + j, ox + j) = it.z[j];
    big(row + j, oz + j) = it.x[j];
  }
  rhs.segment(row, n) = r.rxz;
  row += n;
  for (int t = 0; t < l; ++t) {
    big(row + t, ov + t) = it.w[t];
    big(row + t, ow + t) = it.v[t];
  }
  rhs.segment(row, l) = r.rwv;

  Vec sol = Eigen::FullPivLU<Mat>(big).solve(rhs);
  dclp::Direction d;
  d.dx = sol.segment(ox, n);
  d.dy = sol.segment(oy, m);
  d.dv = sol.segment(ov, l);
  d.dz = sol.segment(oz, n);
  d.dw = sol.segment(ow, l);
  return d;
}

// Residual norms of a direction substituted into the five Newton
// equations, one per block.
inline std::vector<double> newton_block_residuals(const dclp::StandardLp& lp,
                                                  const dclp::Iterate& it,
                                                  const dclp::Residuals& r,
                                                  const dclp::Direction& d) {
  const int n = lp.n(), l = lp.n_upper();
  Mat a = dclp::to_dense(lp.a);
  Vec e2 = a.transpose() * d.dy + d.dz;
  Vec e3(l), e5(l);
  for (int t = 0; t < l; ++t) {
    int j = lp.upper_set[t];
    e2[j] -= d.dw[t];
    e3[t] = d.dx[j] + d.dv[t];
    e5[t] = it.w[t] * d.dv[t] + it.v[t] * d.dw[t];
  }
  Vec e4(n);
  for (int j = 0; j < n; ++j) e4[j] = it.z[j] * d.dx[j] + it.x[j] * d.dz[j];
  return {(a * d.dx - r.rb).norm(), (e2 - r.rc).norm(), (e3 - r.ru).norm(),
          (e4 - r.rxz).norm(), (e5 - r.rwv).norm()};
}

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// Dense two-phase simplex with Bland's rule, for min c'x s.t. Ax = b,
// x >= 0. No upper bounds. Small instances only.
inline LpStatus simplex_solve(Mat a, Vec b, Vec c, double* objective) {
  const double tol = 1e-9;
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  for (int i = 0; i < m; ++i)
    if (b[i] < 0) {
      a.row(i) = -a.row(i);
      b[i] = -b[i];
    }

  // tableau over structural + artificial columns
  Mat t(m, n + m);
  t << a, Mat::Identity(m, m);
  std::vector<int> basis(m);
  std::iota(basis.begin(), basis.end(), n);

  auto pivot = [&](int row, int col) {
    double piv = t(row, col);
    t.row(row) /= piv;
    b[row] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(row);
      b[i] -= f * b[row];
    }
    basis[row] = col;
  };

  auto run_phase = [&](const Vec& cost, int ncols) -> bool {
    // returns false when unbounded
    while (true) {
      Vec y(m);  // simplex multipliers via basis costs
      Mat binv_cols(m, m);
      // reduced costs computed directly from the tableau: the tableau
      // already holds B^{-1} A, so z_j - c_j = cB' (B^{-1}A)_j - c_j
      Vec cb(m);
      for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        double red = cost[j] - cb.dot(t.col(j));
        if (red < -tol) {
          enter = j;  // Bland: smallest index
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) > tol) {
          double ratio = b[i] / t(i, enter);
          if (ratio < best - tol ||
              (ratio < best + tol && (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  // phase 1: minimize the artificial sum
  Vec cost1 = Vec::Zero(n + m);
  for (int j = n; j < n + m; ++j) cost1[j] = 1.0;
  run_phase(cost1, n + m);
  double art = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) art += b[i];
  if (art > 1e-7) return LpStatus::kInfeasible;
  // force remaining artificials out where possible
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(t(i, j)) > tol) {
        pivot(i, j);
        break;
      }
  }

  Vec cost2 = Vec::Zero(n + m);
  cost2.head(n) = c;
  if (!run_phase(cost2, n)) return LpStatus::kUnbounded;
  double obj = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) obj += c[basis[i]] * b[i];
  *objective = obj;
  return LpStatus::kOptimal;
}

// Brute-force optimum of min c'x s.t. Ax = b, 0 <= x <= u by enumerating
// basic solutions with nonbasic variables at either bound. Exponential;
// n must stay tiny.
inline LpStatus vertex_enum_optimum(const Mat& a, const Vec& b, const Vec& c,
                                    const Vec& upper, double* objective) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  double best = std::numeric_limits<double>::infinity();
  bool feasible = false;

  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  std::vector<int> basis;
  auto try_basis = [&](const std::vector<int>& bset) {
    std::vector<int> nonbasic;
    for (int j = 0; j < n; ++j)
      if (std::find(bset.begin(), bset.end(), j) == bset.end())
        nonbasic.push_back(j);
    Mat ab(m, m);
    for (int i = 0; i < m; ++i) ab.col(i) = a.col(bset[i]);
    Eigen::FullPivLU<Mat> lu(ab);
    if (!lu.isInvertible()) return;
    // nonbasic at lower (0) or finite upper
    int n_nb = static_cast<int>(nonbasic.size());
    for (long mask = 0; mask < (1L << n_nb); ++mask) {
      Vec xn = Vec::Zero(n);
      bool ok = true;
      for (int q = 0; q < n_nb; ++q)
        if (mask & (1L << q)) {
          if (!std::isfinite(upper[nonbasic[q]])) {
            ok = false;
            break;
          }
          xn[nonbasic[q]] = upper[nonbasic[q]];
        }
      if (!ok) continue;
      Vec xb = lu.solve(b - a * xn);
      Vec x = xn;
      for (int i = 0; i < m; ++i) x[bset[i]] = xb[i];
      for (int j = 0; j < n && ok; ++j)
        ok = x[j] >= -1e-9 && x[j] <= upper[j] + 1e-9;
      if ((a * x - b).norm() > 1e-7 * (1.0 + b.norm())) ok = false;
      if (ok) {
        feasible = true;
        best = std::min(best, c.dot(x));
      }
    }
  };

  std::vector<int> pick(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      try_basis(pick);
      return;
    }
    for (int j = start; j < n; ++j) {
      pick[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (!feasible) return LpStatus::kInfeasible;
  *objective = best;
  return LpStatus::kOptimal;
}

// Fill-in of a symmetric pattern eliminated in the given order, counted
// by naive dense graph elimination.
inline int dense_fill_count(const std::vector<std::vector<bool>>& adj,
                            const std::vector<int>& order) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<bool>> work = adj;
  std::vector<bool> dead(n, false);
  int fill = 0;
  for (int k : order) {
    std::vector<int> nbr;
    for (int j = 0; j < n; ++j)
      if (!dead[j] && j != k && work[k][j]) nbr.push_back(j);
    for (size_t a = 0; a < nbr.size(); ++a)
      for (size_t b = a + 1; b < nbr.size(); ++b)
        if (!work[nbr[a]][nbr[b]]) {
          work[nbr[a]][nbr[b]] = work[nbr[b]][nbr[a]] = true;
          ++fill;
        }
    dead[k] = true;
  }
  return fill;
}

}  // namespace oracle
