#pragma once

#include "dclp/sparse.hpp"

namespace dclp {

// S diag(lambda) S^T, lower triangle stored. All lambda entries must be
// strictly positive.
SparseMatrix form_scaled_gram(const SparseMatrix& s, const Vec& lambda);

// Gram matrix with a frozen pattern: the pattern of S diag(lambda) S^T
// does not depend on lambda, so it is computed once and only the values
// are refreshed per scaling.
class GramCache {
 public:
  explicit GramCache(SparseMatrix s);

  const SparseMatrix& refresh(const Vec& lambda);
  const SparseMatrix& gram() const { return gram_; }
  const SparseMatrix& matrix() const { return s_; }

 private:
  SparseMatrix s_;
  SparseMatrix st_;    // S^T, for row access
  SparseMatrix gram_;  // lower triangle, values refreshed in place
};

}  // namespace dclp
