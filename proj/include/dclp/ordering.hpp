#pragma once

#include "dclp/sparse.hpp"

namespace dclp {

// Fill-reducing ordering of a structurally symmetric pattern (values are
// ignored; the pattern may be given as lower triangle or full, it is
// symmetrized internally).
//
// Minimum degree on the quotient graph with element absorption and
// merging of indistinguishable variables. Ties between equal-degree
// candidates are broken by lowest original index, so the result is
// deterministic.
//
// perm[k] is the node eliminated k-th.
Permutation min_degree_order(const SparseMatrix& pattern);

}  // namespace dclp
