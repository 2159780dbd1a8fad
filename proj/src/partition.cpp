#include "dclp/partition.hpp"

#include <algorithm>
#include <cmath>

#include "dclp/errors.hpp"

namespace dclp {

int DensityPolicy::threshold(int m) const {
  int by_frac = static_cast<int>(std::ceil(frac * m));
  int t = force ? std::min(min_abs, by_frac) : std::max(min_abs, by_frac);
  return std::max(t, 1);
}

ColumnPartition detect_dense(const SparseMatrix& a,
                             const DensityPolicy& policy) {
  if (a.rows <= 0 || a.cols <= 0)
    throw DimensionError("detect_dense: empty matrix");

  ColumnPartition part;
  part.threshold_used =
      policy.active(a.rows) ? policy.threshold(a.rows) : a.rows + 1;
  for (int j = 0; j < a.cols; ++j) {
    if (a.col_nnz(j) >= part.threshold_used)
      part.dense_idx.push_back(j);
    else
      part.sparse_idx.push_back(j);
  }
  std::vector<int> order = part.sparse_idx;
  order.insert(order.end(), part.dense_idx.begin(), part.dense_idx.end());
  part.p1 = Permutation(std::move(order));
  return part;
}

}  // namespace dclp
