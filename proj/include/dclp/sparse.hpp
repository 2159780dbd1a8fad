#pragma once

#include <Eigen/Core>
#include <vector>

namespace dclp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Compressed sparse-column matrix.
//
// Invariants after construction:
//   - col_ptr is non-decreasing, col_ptr[0] == 0, col_ptr[cols] == nnz
//   - row indices strictly increasing within each column and < rows
//   - exact zeros are dropped
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_ptr;  // size cols + 1
  std::vector<int> row_idx;  // size nnz
  std::vector<double> values;

  SparseMatrix() : col_ptr(1, 0) {}
  SparseMatrix(int nrows, int ncols)
      : rows(nrows), cols(ncols), col_ptr(ncols + 1, 0) {}

  int nnz() const { return static_cast<int>(row_idx.size()); }
  int col_nnz(int j) const { return col_ptr[j + 1] - col_ptr[j]; }

  // Throws if any structural invariant is violated.
  void validate() const;
};

struct Triplet {
  int row;
  int col;
  double value;
};

// Builds a CSC matrix from triplets: duplicates are summed, exact zeros
// (after summing) are dropped, rows are sorted within each column.
SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& ts);

SparseMatrix transpose(const SparseMatrix& a);

// New matrix made of the given columns of `a`, in the given order.
SparseMatrix select_columns(const SparseMatrix& a, const std::vector<int>& idx);

// A*x, or A^T*x when transpose is set.
Vec spmv(const SparseMatrix& a, const Vec& x, bool transpose = false);

// y += alpha * A * x (or A^T when transpose is set).
void spmv_accum(const SparseMatrix& a, const Vec& x, double alpha, Vec& y,
                bool transpose = false);

Mat to_dense(const SparseMatrix& a);

// Permutation of {0..n-1}. perm[k] is the original index placed at
// position k; inv[perm[k]] == k.
struct Permutation {
  std::vector<int> perm;
  std::vector<int> inv;

  Permutation() = default;
  explicit Permutation(std::vector<int> p);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(perm.size()); }

  // (P x)[k] = x[perm[k]]
  Vec apply(const Vec& x) const;
  // (P^T y)[perm[k]] = y[k]
  Vec apply_transpose(const Vec& y) const;
};

}  // namespace dclp
