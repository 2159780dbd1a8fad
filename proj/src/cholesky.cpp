#include "dclp/cholesky.hpp"

#include <algorithm>
#include <cmath>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

// Permuted upper-triangular view of a symmetric matrix given in lower
// (or full) storage: entry (i, j) lands in column max(pi, pj) at row
// min(pi, pj). Rows within a column are not sorted.
struct PermutedUpper {
  std::vector<int> ptr;
  std::vector<int> row;
  std::vector<double> val;
};

PermutedUpper permute_to_upper(const SparseMatrix& m, const Permutation& p,
                               bool pattern_only) {
  const int n = m.rows;
  PermutedUpper u;
  u.ptr.assign(n + 1, 0);
  std::vector<char> seen_diag(n, 0);
  auto place = [&](int i, int j) {
    int pi = p.inv[i];
    int pj = p.inv[j];
    return std::pair<int, int>(std::min(pi, pj), std::max(pi, pj));
  };
  for (int j = 0; j < m.cols; ++j) {
    for (int q = m.col_ptr[j]; q < m.col_ptr[j + 1]; ++q) {
      int i = m.row_idx[q];
      if (i < j) continue;  // full storage: keep one triangle
      auto [r, c] = place(i, j);
      if (r == c) {
        if (seen_diag[c]) continue;
        seen_diag[c] = 1;
      }
      u.ptr[c + 1]++;
    }
  }
  for (int c = 0; c < n; ++c) u.ptr[c + 1] += u.ptr[c];
  u.row.resize(u.ptr[n]);
  if (!pattern_only) u.val.resize(u.ptr[n]);
  std::vector<int> next(u.ptr.begin(), u.ptr.end() - 1);
  std::fill(seen_diag.begin(), seen_diag.end(), 0);
  for (int j = 0; j < m.cols; ++j) {
    for (int q = m.col_ptr[j]; q < m.col_ptr[j + 1]; ++q) {
      int i = m.row_idx[q];
      if (i < j) continue;
      auto [r, c] = place(i, j);
      if (r == c) {
        if (seen_diag[c]) continue;
        seen_diag[c] = 1;
      }
      int slot = next[c]++;
      u.row[slot] = r;
      if (!pattern_only) u.val[slot] = m.values[q];
    }
  }
  return u;
}

std::vector<int> elimination_tree(const PermutedUpper& u, int n) {
  std::vector<int> parent(n, -1), ancestor(n, -1);
  for (int k = 0; k < n; ++k) {
    for (int p = u.ptr[k]; p < u.ptr[k + 1]; ++p) {
      int i = u.row[p];
      while (i != -1 && i < k) {
        int inext = ancestor[i];
        ancestor[i] = k;  // path compression
        if (inext == -1) parent[i] = k;
        i = inext;
      }
    }
  }
  return parent;
}

}  // namespace

SymbolicFactor symbolic_factorize(const SparseMatrix& pattern,
                                  Permutation order) {
  if (pattern.rows != pattern.cols)
    throw DimensionError("symbolic_factorize: pattern must be square");
  if (order.size() != pattern.rows)
    throw DimensionError("symbolic_factorize: order size mismatch");
  const int n = pattern.rows;

  SymbolicFactor sym;
  PermutedUpper upper = permute_to_upper(pattern, order, /*pattern_only=*/true);
  sym.order = std::move(order);
  sym.etree = elimination_tree(upper, n);

  // Row patterns of L by etree traversal from each entry of the upper
  // column (row subtree reach).
  sym.row_ptr.assign(n + 1, 0);
  std::vector<int> stamp(n, -1);
  std::vector<std::vector<int>> rows(n);
  for (int k = 0; k < n; ++k) {
    stamp[k] = k;
    for (int p = upper.ptr[k]; p < upper.ptr[k + 1]; ++p) {
      int i = upper.row[p];
      while (i != -1 && i < k && stamp[i] != k) {
        rows[k].push_back(i);
        stamp[i] = k;
        i = sym.etree[i];
      }
    }
    std::sort(rows[k].begin(), rows[k].end());
    sym.row_ptr[k + 1] = sym.row_ptr[k] + static_cast<int>(rows[k].size());
  }
  sym.row_cols.reserve(sym.row_ptr[n]);
  for (int k = 0; k < n; ++k)
    sym.row_cols.insert(sym.row_cols.end(), rows[k].begin(), rows[k].end());

  // Column-major pattern of L: diagonal first, then each later row that
  // reaches the column, in ascending row order.
  sym.col_counts.assign(n, 1);
  for (int c : sym.row_cols) sym.col_counts[c]++;
  sym.l_pattern = SparseMatrix(n, n);
  sym.l_pattern.col_ptr.assign(n + 1, 0);
  for (int c = 0; c < n; ++c)
    sym.l_pattern.col_ptr[c + 1] = sym.l_pattern.col_ptr[c] + sym.col_counts[c];
  sym.l_pattern.row_idx.resize(sym.l_pattern.col_ptr[n]);
  std::vector<int> next(n);
  for (int c = 0; c < n; ++c) {
    sym.l_pattern.row_idx[sym.l_pattern.col_ptr[c]] = c;
    next[c] = sym.l_pattern.col_ptr[c] + 1;
  }
  for (int k = 0; k < n; ++k)
    for (int p = sym.row_ptr[k]; p < sym.row_ptr[k + 1]; ++p)
      sym.l_pattern.row_idx[next[sym.row_cols[p]]++] = k;
  return sym;
}

CholeskyFactor numeric_factorize(const SparseMatrix& m,
                                 const SymbolicFactor& sym,
                                 const FactorOptions& opts) {
  if (m.rows != m.cols || m.rows != sym.size())
    throw DimensionError("numeric_factorize: dimension mismatch");
  const int n = m.rows;

  double diag_max = 0.0;
  for (int j = 0; j < n; ++j)
    for (int p = m.col_ptr[j]; p < m.col_ptr[j + 1]; ++p)
      if (m.row_idx[p] == j) diag_max = std::max(diag_max, m.values[p]);

  const double scale =
      opts.squared_pivot_scale ? diag_max * diag_max : diag_max;
  const double small_pivot = opts.pivot_rel_tol * scale;
  // Pivots in [-indefinite_tol, small_pivot] are treated as annihilated
  // and shifted; anything below means the input was not PSD.
  const double indefinite_tol = std::max(small_pivot, 1e-8 * diag_max);
  const double shift = diag_max > 0.0 ? diag_max : 1.0;
  const double shift_entry = std::sqrt(shift);

  PermutedUpper upper =
      permute_to_upper(m, sym.order, /*pattern_only=*/false);

  CholeskyFactor f;
  f.perm = sym.order;
  f.diag_max_sq = diag_max * diag_max;
  f.l = sym.l_pattern;  // shares the symbolic pattern
  f.l.values.assign(f.l.nnz(), 0.0);

  const auto& lp = f.l.col_ptr;
  const auto& li = f.l.row_idx;
  auto& lx = f.l.values;
  std::vector<int> fill(n);  // next write slot per column
  std::vector<double> x(n, 0.0);

  for (int k = 0; k < n; ++k) {
    for (int p = upper.ptr[k]; p < upper.ptr[k + 1]; ++p)
      x[upper.row[p]] += upper.val[p];
    double d = x[k];
    x[k] = 0.0;
    for (int rp = sym.row_ptr[k]; rp < sym.row_ptr[k + 1]; ++rp) {
      int c = sym.row_cols[rp];
      double wc = x[c] / lx[lp[c]];
      x[c] = 0.0;
      for (int p = lp[c] + 1; p < fill[c]; ++p) x[li[p]] -= lx[p] * wc;
      d -= wc * wc;
      if (li[fill[c]] != k)
        throw std::logic_error("numeric_factorize: pattern mismatch");
      lx[fill[c]++] = wc;
    }
    if (d <= small_pivot) {
      if (d < -indefinite_tol)
        throw IndefiniteError("numeric_factorize: input is not PSD (pivot " +
                              std::to_string(d) + " at permuted row " +
                              std::to_string(k) + ")");
      f.shift_cols.push_back({k, shift_entry});
      d += shift;
    }
    lx[lp[k]] = std::sqrt(d);
    fill[k] = lp[k] + 1;
  }
  return f;
}

Mat solve_lower(const CholeskyFactor& f, const Mat& rhs) {
  const int n = f.l.rows;
  if (rhs.rows() != n) throw DimensionError("solve_lower: rhs rows mismatch");
  Mat x = rhs;
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    auto xc = x.col(col);
    for (int c = 0; c < n; ++c) {
      int p0 = f.l.col_ptr[c];
      double xcv = xc[c] / f.l.values[p0];
      xc[c] = xcv;
      if (xcv == 0.0) continue;
      for (int p = p0 + 1; p < f.l.col_ptr[c + 1]; ++p)
        xc[f.l.row_idx[p]] -= f.l.values[p] * xcv;
    }
  }
  return x;
}

Vec solve_lower(const CholeskyFactor& f, const Vec& rhs) {
  return Vec(solve_lower(f, Mat(rhs)));
}

Mat solve_upper(const CholeskyFactor& f, const Mat& rhs) {
  const int n = f.l.rows;
  if (rhs.rows() != n) throw DimensionError("solve_upper: rhs rows mismatch");
  Mat x = rhs;
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    auto xc = x.col(col);
    for (int c = n - 1; c >= 0; --c) {
      int p0 = f.l.col_ptr[c];
      double acc = xc[c];
      for (int p = p0 + 1; p < f.l.col_ptr[c + 1]; ++p)
        acc -= f.l.values[p] * xc[f.l.row_idx[p]];
      xc[c] = acc / f.l.values[p0];
    }
  }
  return x;
}

Vec solve_upper(const CholeskyFactor& f, const Vec& rhs) {
  return Vec(solve_upper(f, Mat(rhs)));
}

}  // namespace dclp
