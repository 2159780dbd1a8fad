#include "dclp/strategy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

#include "dclp/cg.hpp"
#include "dclp/errors.hpp"
#include "dclp/ordering.hpp"

namespace dclp {

Vec NormalParts::apply(const Vec& v) const {
  Vec out = Vec::Zero(v.size());
  Vec t = spmv(s, v, /*transpose=*/true);
  t.array() *= lambda_s.array();
  spmv_accum(s, t, 1.0, out);
  if (d.cols > 0) {
    Vec td = spmv(d, v, /*transpose=*/true);
    td.array() *= lambda_d.array();
    spmv_accum(d, td, 1.0, out);
  }
  return out;
}

double NormalParts::max_diag() const {
  Vec diag = Vec::Zero(s.rows);
  auto accumulate = [&](const SparseMatrix& m, const Vec& lam) {
    for (int j = 0; j < m.cols; ++j)
      for (int p = m.col_ptr[j]; p < m.col_ptr[j + 1]; ++p)
        diag[m.row_idx[p]] += lam[j] * m.values[p] * m.values[p];
  };
  accumulate(s, lambda_s);
  if (d.cols > 0) accumulate(d, lambda_d);
  return diag.size() > 0 ? diag.maxCoeff() : 0.0;
}

Vec PreconditionedNormal::apply(const Vec& v) const {
  if (v.size() != factor.l.rows)
    throw DimensionError("preconditioned operator: size mismatch");
  Vec out = v;
  if (dense_block.cols() > 0)
    out.noalias() += dense_block * (dense_block.transpose() * v);
  if (shift_block.cols() > 0)
    out.noalias() -= shift_block * (shift_block.transpose() * v);
  return out;
}

double PreconditionedNormal::max_abs_entry() const {
  double best = 0.0;
  const int m = factor.l.rows;
  for (int i = 0; i < m; ++i) {
    double diag = 1.0;
    if (dense_block.cols() > 0) diag += dense_block.row(i).squaredNorm();
    if (shift_block.cols() > 0) diag -= shift_block.row(i).squaredNorm();
    best = std::max(best, diag);
  }
  return best;
}

Vec apply_w(const PreconditionedNormal& op, const Vec& v) {
  return op.apply(v);
}

namespace {

PreconditionedNormal build_from_factor(CholeskyFactor factor,
                                       const SparseMatrix& s,
                                       const SparseMatrix& d,
                                       const Vec& lambda_s,
                                       const Vec& lambda_d) {
  const int m = s.rows;
  PreconditionedNormal op;
  op.factor = std::move(factor);

  // dense block: L B = P D Lambda_D^{1/2}, one column per dense column
  const int k = d.cols;
  Mat rhs = Mat::Zero(m, k);
  for (int j = 0; j < k; ++j) {
    double root = std::sqrt(lambda_d[j]);
    for (int p = d.col_ptr[j]; p < d.col_ptr[j + 1]; ++p)
      rhs(op.factor.perm.inv[d.row_idx[p]], j) = root * d.values[p];
  }
  op.dense_block = solve_lower(op.factor, rhs);

  // shift block: L N = -F, canonical right-hand sides
  const int nd = static_cast<int>(op.factor.shift_cols.size());
  Mat frhs = Mat::Zero(m, nd);
  for (int j = 0; j < nd; ++j)
    frhs(op.factor.shift_cols[j].row, j) = -op.factor.shift_cols[j].value;
  op.shift_block = solve_lower(op.factor, frhs);

  auto parts = std::make_shared<NormalParts>();
  parts->s = s;
  parts->d = d;
  parts->lambda_s = lambda_s;
  parts->lambda_d = lambda_d;
  op.parts = std::move(parts);
  return op;
}

void check_partition(const SparseMatrix& s, const SparseMatrix& d,
                     const Vec& lambda_s, const Vec& lambda_d) {
  if (d.cols > 0 && d.rows != s.rows)
    throw DimensionError("build_w_operator: S and D row counts differ");
  if (lambda_s.size() != s.cols || lambda_d.size() != d.cols)
    throw DimensionError("build_w_operator: scaling length mismatch");
}

}  // namespace

PreconditionedNormal build_w_operator(const SparseMatrix& s,
                                      const SparseMatrix& d,
                                      const Vec& lambda_s, const Vec& lambda_d,
                                      const FactorOptions& opts) {
  check_partition(s, d, lambda_s, lambda_d);
  GramCache gram(s);
  SymbolicFactor sym =
      symbolic_factorize(gram.gram(), min_degree_order(gram.gram()));
  return build_w_operator(gram, d, lambda_s, lambda_d, sym, opts);
}

PreconditionedNormal build_w_operator(GramCache& gram, const SparseMatrix& d,
                                      const Vec& lambda_s, const Vec& lambda_d,
                                      const SymbolicFactor& sym,
                                      const FactorOptions& opts) {
  check_partition(gram.matrix(), d, lambda_s, lambda_d);
  const SparseMatrix& m = gram.refresh(lambda_s);
  CholeskyFactor factor = numeric_factorize(m, sym, opts);
  return build_from_factor(std::move(factor), gram.matrix(), d, lambda_s,
                           lambda_d);
}

namespace {

// Enforced accuracy gate shared by the proposed and Woodbury routes.
void check_normal_residual(const PreconditionedNormal& op, const Vec& q,
                           const Vec& dy, double tol, int iters,
                           const char* who) {
  double qn = q.norm();
  double rn = (op.parts->apply(dy) - q).norm();
  if (rn > 10.0 * tol * qn)
    throw StrategyError(std::string(who) +
                            ": normal-equations residual check failed (" +
                            std::to_string(rn / (qn > 0 ? qn : 1.0)) + ")",
                        iters);
}

}  // namespace

DirectionSolve solve_dy_proposed(const PreconditionedNormal& op, const Vec& q,
                                 double cg_tol, int cg_max) {
  const Permutation& p2 = op.factor.perm;
  if (q.size() != p2.size())
    throw DimensionError("solve_dy_proposed: rhs size mismatch");

  DirectionSolve out;
  if (q.norm() == 0.0) {
    out.dy = Vec::Zero(q.size());
    return out;
  }

  Vec q_hat = solve_lower(op.factor, p2.apply(q));
  auto apply = [&op](const Vec& v) { return op.apply(v); };

  // Tighten the CG target until the direction passes the residual gate
  // on the unpreconditioned system (the triangular factors distort the
  // two residual norms relative to each other).
  double target = cg_tol;
  Vec w_hat = Vec::Zero(q.size());
  while (true) {
    auto [sol, report] = conjugate_gradient(apply, q_hat, w_hat, target,
                                            cg_max - out.cg_iters);
    w_hat = sol;
    out.cg_iters += report.iterations;
    Vec dy = p2.apply_transpose(solve_upper(op.factor, w_hat));
    double qn = q.norm();
    double rn = (op.parts->apply(dy) - q).norm();
    if (report.converged && rn <= 10.0 * cg_tol * qn) {
      out.dy = std::move(dy);
      return out;
    }
    if (out.cg_iters >= cg_max || (!report.converged && report.iterations == 0))
      throw StrategyError("solve_dy_proposed: CG did not reach tolerance",
                          out.cg_iters);
    target *= 0.1;
  }
}

Vec solve_dy_full(const SparseMatrix& a, const Vec& lambda, const Vec& q,
                  const FactorOptions& opts) {
  SparseMatrix gram = form_scaled_gram(a, lambda);
  SymbolicFactor sym = symbolic_factorize(gram, min_degree_order(gram));
  CholeskyFactor f = numeric_factorize(gram, sym, opts);
  return f.perm.apply_transpose(
      solve_upper(f, solve_lower(f, f.perm.apply(q))));
}

Vec solve_dy_smw(const PreconditionedNormal& op, const Vec& q, double tol) {
  const Permutation& p2 = op.factor.perm;
  const int k = op.k(), d = op.d();

  Vec t = solve_lower(op.factor, p2.apply(q));
  if (k + d == 0)
    return p2.apply_transpose(solve_upper(op.factor, t));

  // capacitance system in the k+d update directions
  Mat c(k + d, k + d);
  const Mat& b = op.dense_block;
  const Mat& nblk = op.shift_block;
  c.topLeftCorner(k, k).noalias() = b.transpose() * b;
  c.topLeftCorner(k, k) += Mat::Identity(k, k);
  c.bottomRightCorner(d, d).noalias() = nblk.transpose() * nblk;
  c.bottomRightCorner(d, d) -= Mat::Identity(d, d);
  c.topRightCorner(k, d).noalias() = -b.transpose() * nblk;
  c.bottomLeftCorner(d, k) = c.topRightCorner(k, d).transpose();

  Vec rhs_small(k + d);
  rhs_small.head(k) = b.transpose() * t;
  rhs_small.tail(d) = -nblk.transpose() * t;

  Eigen::PartialPivLU<Mat> lu(c);
  double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  double scale = c.cwiseAbs().maxCoeff();
  if (!(pivot_min > 1e-13 * std::max(1.0, scale)))
    throw StrategyError("solve_dy_smw: singular capacitance matrix");
  Vec h = lu.solve(rhs_small);

  Vec inner = t;
  inner.noalias() -= b * h.head(k);
  inner.noalias() += nblk * h.tail(d);
  Vec dy = p2.apply_transpose(solve_upper(op.factor, inner));
  check_normal_residual(op, q, dy, tol, 0, "solve_dy_smw");
  return dy;
}

Vec solve_dy_smw(const SparseMatrix& s, const SparseMatrix& d,
                 const Vec& lambda_s, const Vec& lambda_d, const Vec& q,
                 double tol, const FactorOptions& opts) {
  PreconditionedNormal op = build_w_operator(s, d, lambda_s, lambda_d, opts);
  return solve_dy_smw(op, q, tol);
}

SpectralProbe spectral_probe(const PreconditionedNormal& op) {
  const int m = op.factor.l.rows;
  if (m > 500)
    throw DomainError("spectral_probe: dense probe guarded to m <= 500");
  Mat w = Mat::Identity(m, m);
  if (op.dense_block.cols() > 0)
    w.noalias() += op.dense_block * op.dense_block.transpose();
  if (op.shift_block.cols() > 0)
    w.noalias() -= op.shift_block * op.shift_block.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> eig(w, Eigen::EigenvaluesOnly);
  SpectralProbe probe;
  probe.lambda_min = eig.eigenvalues().minCoeff();
  probe.lambda_max = eig.eigenvalues().maxCoeff();
  probe.max_abs_entry = w.cwiseAbs().maxCoeff();
  return probe;
}

NormalSolver::NormalSolver(const SparseMatrix& a,
                           const DirectionStrategy& config)
    : config_(config),
      partition_(detect_dense(
          a, config.variant == StrategyKind::kFullCholesky
                 ? DensityPolicy{.min_abs = a.rows + 1,
                                 .frac = 1.0,
                                 .min_rows = 0,
                                 .force = false}
                 : config.policy)),
      dense_cols_(select_columns(a, partition_.dense_idx)),
      gram_(select_columns(a, partition_.sparse_idx)) {
  sym_ = symbolic_factorize(gram_.gram(), min_degree_order(gram_.gram()));
}

void NormalSolver::refresh(const Vec& lambda) {
  Vec ls(partition_.sparse_idx.size()), ld(partition_.dense_idx.size());
  for (size_t i = 0; i < partition_.sparse_idx.size(); ++i)
    ls[i] = lambda[partition_.sparse_idx[i]];
  for (size_t i = 0; i < partition_.dense_idx.size(); ++i)
    ld[i] = lambda[partition_.dense_idx[i]];
  op_ = build_w_operator(gram_, dense_cols_, ls, ld, sym_, config_.factor);
}

DirectionSolve NormalSolver::solve_dy(const Vec& q) const {
  switch (config_.variant) {
    case StrategyKind::kProposed:
      return solve_dy_proposed(op_, q, config_.cg_tol, config_.cg_max_iter);
    case StrategyKind::kSmw:
      return {solve_dy_smw(op_, q, config_.cg_tol), 0};
    case StrategyKind::kFullCholesky: {
      const CholeskyFactor& f = op_.factor;
      return {f.perm.apply_transpose(
                  solve_upper(f, solve_lower(f, f.perm.apply(q)))),
              0};
    }
  }
  throw DomainError("unknown strategy variant");
}

}  // namespace dclp
