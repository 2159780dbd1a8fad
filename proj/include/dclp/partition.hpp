#pragma once

#include <vector>

#include "dclp/sparse.hpp"

namespace dclp {

// Rule deciding which columns count as dense. Without `force` the rule
// is inactive below min_rows and the threshold is
// max(min_abs, ceil(frac * m)); with `force` the guard is bypassed and
// the more permissive bound min(min_abs, ceil(frac * m)) is used.
struct DensityPolicy {
  int min_abs = 100;
  double frac = 0.3;
  int min_rows = 500;
  bool force = false;

  int threshold(int m) const;
  bool active(int m) const { return force || m >= min_rows; }
};

// Column split A P1 = [sparse, dense]. Index lists are ascending; P1
// orders the sparse columns first.
struct ColumnPartition {
  Permutation p1;
  std::vector<int> sparse_idx;
  std::vector<int> dense_idx;
  int threshold_used = 0;

  int n_dense() const { return static_cast<int>(dense_idx.size()); }
};

ColumnPartition detect_dense(const SparseMatrix& a,
                             const DensityPolicy& policy = {});

}  // namespace dclp
