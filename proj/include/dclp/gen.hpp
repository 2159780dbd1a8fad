#pragma once

#include <cstdint>

#include "dclp/mps.hpp"

namespace dclp {

// Random feasible LP with planted dense columns. Built backwards from an
// interior primal/dual pair: b = A x*, c = A'y* + z* (- w* on bounded
// columns), so the instance always has an optimum.
struct GenSpec {
  int m = 20;
  int n = 40;               // total columns, >= m + dense_cols
  int dense_cols = 1;
  double dense_density = 0.5;  // fraction of rows hit by a dense column
  double upper_frac = 0.0;     // fraction of columns given finite uppers
  int sparse_nnz_min = 2;
  int sparse_nnz_max = 4;
  // zero out the last row of every sparse column so the sparse block
  // loses full row rank (the dense columns still cover that row)
  bool rank_deficient_sparse = false;
  std::uint64_t seed = 0;
};

RawLp generate_random_lp(const GenSpec& spec);

}  // namespace dclp
