#pragma once

#include <memory>

#include "dclp/cholesky.hpp"
#include "dclp/gram.hpp"
#include "dclp/partition.hpp"
#include "dclp/sparse.hpp"

namespace dclp {

enum class StrategyKind { kProposed, kFullCholesky, kSmw };

// Configuration of one way to compute dy from the normal equations
// A Lambda A' dy = q.
struct DirectionStrategy {
  StrategyKind variant = StrategyKind::kProposed;
  DensityPolicy policy;
  double cg_tol = 1e-8;
  int cg_max_iter = 200;
  FactorOptions factor;
};

// The scaled constraint matrix split into its sparse and dense column
// blocks, with the scaling attached. Applies A Lambda A' without ever
// forming it.
struct NormalParts {
  SparseMatrix s;  // m x (n-k)
  SparseMatrix d;  // m x k
  Vec lambda_s, lambda_d;

  Vec apply(const Vec& v) const;
  // max_i (A Lambda A')_ii == max absolute entry of the Gram matrix
  double max_diag() const;
};

// Matrix-free representation of  I + B B' - N N'  where B solves
// L B = P D Lambda_D^{1/2} and N solves L N = -F. Equal to
// L^{-1} P (A Lambda A') P' L^{-T}; symmetric positive definite when A
// has full row rank.
struct PreconditionedNormal {
  CholeskyFactor factor;
  Mat dense_block;  // B: m x k
  Mat shift_block;  // N: m x d
  std::shared_ptr<const NormalParts> parts;

  int k() const { return static_cast<int>(dense_block.cols()); }
  int d() const { return static_cast<int>(shift_block.cols()); }
  Vec apply(const Vec& v) const;
  // exact: the operator is a Gram matrix, so the largest absolute entry
  // sits on the diagonal
  double max_abs_entry() const;
};

PreconditionedNormal build_w_operator(const SparseMatrix& s,
                                      const SparseMatrix& d,
                                      const Vec& lambda_s, const Vec& lambda_d,
                                      const FactorOptions& opts = {});

// Same build against precomputed symbolic structure (the pattern is
// scaling-independent, so solvers reuse it across iterations).
PreconditionedNormal build_w_operator(GramCache& gram, const SparseMatrix& d,
                                      const Vec& lambda_s, const Vec& lambda_d,
                                      const SymbolicFactor& sym,
                                      const FactorOptions& opts = {});

Vec apply_w(const PreconditionedNormal& op, const Vec& v);

struct DirectionSolve {
  Vec dy;
  int cg_iters = 0;
};

// dy by triangular solves around a conjugate-gradient solve on the
// preconditioned operator. The returned direction satisfies
// ||A Lambda A' dy - q|| <= 10 * cg_tol * ||q||; CG failure throws
// StrategyError carrying the iterations spent.
DirectionSolve solve_dy_proposed(const PreconditionedNormal& op, const Vec& q,
                                 double cg_tol, int cg_max);

// dy by a direct Cholesky solve with every column treated as sparse.
Vec solve_dy_full(const SparseMatrix& a, const Vec& lambda, const Vec& q,
                  const FactorOptions& opts = {});

// dy through the Sherman-Morrison-Woodbury identity: the sparse-part
// factor is corrected by the dense columns (+) and the pivot shifts (-)
// via a small capacitance system. A singular capacitance matrix throws
// StrategyError.
Vec solve_dy_smw(const SparseMatrix& s, const SparseMatrix& d,
                 const Vec& lambda_s, const Vec& lambda_d, const Vec& q,
                 double tol = 1e-8, const FactorOptions& opts = {});
Vec solve_dy_smw(const PreconditionedNormal& op, const Vec& q, double tol);

struct SpectralProbe {
  double lambda_min = 0;
  double lambda_max = 0;
  double max_abs_entry = 0;
};

// Dense eigendecomposition of the operator; test instrumentation only,
// guarded to m <= 500.
SpectralProbe spectral_probe(const PreconditionedNormal& op);

// Reusable solver bound to one constraint matrix and one strategy:
// partition, Gram pattern and elimination structure are computed once,
// refresh() refactors for a new scaling, solve_dy() dispatches on the
// configured variant.
class NormalSolver {
 public:
  NormalSolver(const SparseMatrix& a, const DirectionStrategy& config);

  void refresh(const Vec& lambda);
  DirectionSolve solve_dy(const Vec& q) const;

  const ColumnPartition& partition() const { return partition_; }
  const PreconditionedNormal& op() const { return op_; }
  const DirectionStrategy& config() const { return config_; }
  int shift_count() const {
    return static_cast<int>(op_.factor.shift_cols.size());
  }
  double max_w_entry() const { return op_.max_abs_entry(); }
  double max_normal_diag() const { return op_.parts->max_diag(); }

 private:
  DirectionStrategy config_;
  ColumnPartition partition_;
  SparseMatrix dense_cols_;
  GramCache gram_;
  SymbolicFactor sym_;
  PreconditionedNormal op_;
};

}  // namespace dclp
