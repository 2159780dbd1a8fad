#include "dclp/gram.hpp"

#include <algorithm>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

void check_lambda(const SparseMatrix& s, const Vec& lambda) {
  if (lambda.size() != s.cols)
    throw DimensionError("scaled gram: lambda length mismatch");
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (!(lambda[i] > 0.0))
      throw DomainError("scaled gram: scaling entries must be positive");
}

}  // namespace

GramCache::GramCache(SparseMatrix s) : s_(std::move(s)), st_(transpose(s_)) {
  const int m = s_.rows;
  gram_ = SparseMatrix(m, m);
  gram_.col_ptr.assign(m + 1, 0);

  // Pattern: column c of the gram holds every row index r >= c shared
  // with some column of S that touches row c.
  std::vector<int> stamp(m, -1);
  std::vector<std::vector<int>> pat(m);
  for (int c = 0; c < m; ++c) {
    for (int q = st_.col_ptr[c]; q < st_.col_ptr[c + 1]; ++q) {
      int j = st_.row_idx[q];  // S(c, j) != 0
      for (int p = s_.col_ptr[j]; p < s_.col_ptr[j + 1]; ++p) {
        int r = s_.row_idx[p];
        if (r >= c && stamp[r] != c) {
          stamp[r] = c;
          pat[c].push_back(r);
        }
      }
    }
    std::sort(pat[c].begin(), pat[c].end());
    gram_.col_ptr[c + 1] =
        gram_.col_ptr[c] + static_cast<int>(pat[c].size());
  }
  gram_.row_idx.reserve(gram_.col_ptr[m]);
  for (int c = 0; c < m; ++c)
    gram_.row_idx.insert(gram_.row_idx.end(), pat[c].begin(), pat[c].end());
  gram_.values.assign(gram_.row_idx.size(), 0.0);
}

const SparseMatrix& GramCache::refresh(const Vec& lambda) {
  check_lambda(s_, lambda);
  const int m = s_.rows;
  std::vector<double> work(m, 0.0);
  for (int c = 0; c < m; ++c) {
    for (int q = st_.col_ptr[c]; q < st_.col_ptr[c + 1]; ++q) {
      int j = st_.row_idx[q];
      double scale = lambda[j] * st_.values[q];
      for (int p = s_.col_ptr[j]; p < s_.col_ptr[j + 1]; ++p) {
        int r = s_.row_idx[p];
        if (r >= c) work[r] += scale * s_.values[p];
      }
    }
    for (int p = gram_.col_ptr[c]; p < gram_.col_ptr[c + 1]; ++p) {
      gram_.values[p] = work[gram_.row_idx[p]];
      work[gram_.row_idx[p]] = 0.0;
    }
  }
  return gram_;
}

SparseMatrix form_scaled_gram(const SparseMatrix& s, const Vec& lambda) {
  check_lambda(s, lambda);
  GramCache cache(s);
  cache.refresh(lambda);
  return cache.gram();
}

}  // namespace dclp
