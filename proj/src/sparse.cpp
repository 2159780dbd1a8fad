#include "dclp/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "dclp/errors.hpp"

namespace dclp {

void SparseMatrix::validate() const {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  if (static_cast<int>(col_ptr.size()) != cols + 1)
    throw DimensionError("col_ptr has wrong length");
  if (col_ptr[0] != 0 || col_ptr[cols] != nnz())
    throw DimensionError("col_ptr endpoints inconsistent with nnz");
  if (row_idx.size() != values.size())
    throw DimensionError("row_idx and values length mismatch");
  for (int j = 0; j < cols; ++j) {
    if (col_ptr[j] > col_ptr[j + 1])
      throw DimensionError("col_ptr not non-decreasing");
    for (int p = col_ptr[j]; p < col_ptr[j + 1]; ++p) {
      if (row_idx[p] < 0 || row_idx[p] >= rows)
        throw DimensionError("row index out of range");
      if (p > col_ptr[j] && row_idx[p - 1] >= row_idx[p])
        throw DimensionError("row indices not strictly increasing in column");
    }
  }
}

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& ts) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  for (const Triplet& t : ts) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw DimensionError("triplet index out of range");
  }
  std::vector<int> order(ts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ts[a].col != ts[b].col) return ts[a].col < ts[b].col;
    return ts[a].row < ts[b].row;
  });

  SparseMatrix m(rows, cols);
  m.row_idx.reserve(ts.size());
  m.values.reserve(ts.size());
  size_t k = 0;
  for (int j = 0; j < cols; ++j) {
    while (k < order.size() && ts[order[k]].col == j) {
      int r = ts[order[k]].row;
      double v = 0.0;
      while (k < order.size() && ts[order[k]].col == j &&
             ts[order[k]].row == r) {
        v += ts[order[k]].value;
        ++k;
      }
      if (v != 0.0) {
        m.row_idx.push_back(r);
        m.values.push_back(v);
      }
    }
    m.col_ptr[j + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix t(a.cols, a.rows);
  t.row_idx.resize(a.nnz());
  t.values.resize(a.nnz());
  std::vector<int> count(a.rows, 0);
  for (int p = 0; p < a.nnz(); ++p) count[a.row_idx[p]]++;
  for (int i = 0; i < a.rows; ++i) t.col_ptr[i + 1] = t.col_ptr[i] + count[i];
  std::vector<int> next(t.col_ptr.begin(), t.col_ptr.end() - 1);
  for (int j = 0; j < a.cols; ++j) {
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      int q = next[a.row_idx[p]]++;
      t.row_idx[q] = j;
      t.values[q] = a.values[p];
    }
  }
  return t;
}

SparseMatrix select_columns(const SparseMatrix& a, const std::vector<int>& idx) {
  SparseMatrix s(a.rows, static_cast<int>(idx.size()));
  int total = 0;
  for (int j : idx) {
    if (j < 0 || j >= a.cols) throw DimensionError("column index out of range");
    total += a.col_nnz(j);
  }
  s.row_idx.reserve(total);
  s.values.reserve(total);
  for (size_t k = 0; k < idx.size(); ++k) {
    int j = idx[k];
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p) {
      s.row_idx.push_back(a.row_idx[p]);
      s.values.push_back(a.values[p]);
    }
    s.col_ptr[k + 1] = static_cast<int>(s.row_idx.size());
  }
  return s;
}

Vec spmv(const SparseMatrix& a, const Vec& x, bool transpose) {
  Vec y = Vec::Zero(transpose ? a.cols : a.rows);
  spmv_accum(a, x, 1.0, y, transpose);
  return y;
}

void spmv_accum(const SparseMatrix& a, const Vec& x, double alpha, Vec& y,
                bool transpose) {
  if (!transpose) {
    if (x.size() != a.cols || y.size() != a.rows)
      throw DimensionError("spmv: dimension mismatch");
    for (int j = 0; j < a.cols; ++j) {
      double xj = alpha * x[j];
      if (xj == 0.0) continue;
      for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p)
        y[a.row_idx[p]] += a.values[p] * xj;
    }
  } else {
    if (x.size() != a.rows || y.size() != a.cols)
      throw DimensionError("spmv: dimension mismatch");
    for (int j = 0; j < a.cols; ++j) {
      double acc = 0.0;
      for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p)
        acc += a.values[p] * x[a.row_idx[p]];
      y[j] += alpha * acc;
    }
  }
}

Mat to_dense(const SparseMatrix& a) {
  Mat d = Mat::Zero(a.rows, a.cols);
  for (int j = 0; j < a.cols; ++j)
    for (int p = a.col_ptr[j]; p < a.col_ptr[j + 1]; ++p)
      d(a.row_idx[p], j) = a.values[p];
  return d;
}

Permutation::Permutation(std::vector<int> p) : perm(std::move(p)) {
  int n = static_cast<int>(perm.size());
  inv.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    if (perm[k] < 0 || perm[k] >= n || inv[perm[k]] != -1)
      throw DomainError("permutation is not a bijection");
    inv[perm[k]] = k;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Permutation(std::move(p));
}

Vec Permutation::apply(const Vec& x) const {
  if (x.size() != size()) throw DimensionError("permutation size mismatch");
  Vec y(size());
  for (int k = 0; k < size(); ++k) y[k] = x[perm[k]];
  return y;
}

Vec Permutation::apply_transpose(const Vec& y) const {
  if (y.size() != size()) throw DimensionError("permutation size mismatch");
  Vec x(size());
  for (int k = 0; k < size(); ++k) x[perm[k]] = y[k];
  return x;
}

}  // namespace dclp
