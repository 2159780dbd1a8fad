#pragma once

#include <vector>

#include "dclp/sparse.hpp"

namespace dclp {

// Elimination structure of a permuted symmetric pattern. Computed once
// per pattern; shared by every numeric factorization with that pattern.
struct SymbolicFactor {
  Permutation order;            // row/column ordering applied before elimination
  std::vector<int> etree;       // parent of each permuted column, -1 at roots
  std::vector<int> col_counts;  // nonzeros per column of L, diagonal included
  SparseMatrix l_pattern;       // pattern of L (values empty), permuted frame

  // CSR mirror of l_pattern: columns of each row, ascending, diagonal
  // excluded. Drives the numeric kernel.
  std::vector<int> row_ptr;
  std::vector<int> row_cols;

  int size() const { return order.size(); }
  int l_nnz() const { return l_pattern.nnz(); }
};

// One diagonal shift applied during factorization: the extra rank-one
// term is (value * e_row)(value * e_row)^T in the permuted frame.
struct PivotShift {
  int row;
  double value;
};

// Cholesky factor of P M P^T + F F^T where F collects the pivot shifts.
// L is lower triangular with strictly positive diagonal.
struct CholeskyFactor {
  SparseMatrix l;
  Permutation perm;
  std::vector<PivotShift> shift_cols;  // F, one canonical column per shift
  double diag_max_sq = 0.0;  // max squared input diagonal at factor time
};

struct FactorOptions {
  // A pivot d is small when d <= pivot_rel_tol * scale, where scale is
  // the squared maximum input diagonal (default) or the plain maximum
  // when squared_pivot_scale is cleared.
  double pivot_rel_tol = 1e-30;
  bool squared_pivot_scale = true;
};

// Elimination analysis of `pattern` (symmetric, lower or full storage)
// under `order`.
SymbolicFactor symbolic_factorize(const SparseMatrix& pattern,
                                  Permutation order);

// Numeric factorization of the symmetric matrix `m` (lower-triangle
// stored, original frame). Small pivots are shifted by the maximum input
// diagonal and recorded in shift_cols, so the factorization always
// completes on positive semidefinite input. A pivot far below zero
// throws IndefiniteError.
CholeskyFactor numeric_factorize(const SparseMatrix& m,
                                 const SymbolicFactor& sym,
                                 const FactorOptions& opts = {});

// L X = rhs (forward substitution), one column at a time.
Mat solve_lower(const CholeskyFactor& f, const Mat& rhs);
Vec solve_lower(const CholeskyFactor& f, const Vec& rhs);

// L^T X = rhs (backward substitution).
Mat solve_upper(const CholeskyFactor& f, const Mat& rhs);
Vec solve_upper(const CholeskyFactor& f, const Vec& rhs);

}  // namespace dclp
