#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dclp/mps.hpp"
#include "dclp/sparse.hpp"

namespace dclp {

// LP in the solver's working form:
//
//   minimize    c'x + objective_offset
//   subject to  A x = b,  x >= 0,
//               x_i + v_i = u_i (v_i >= 0) for i in upper_set.
//
// A is assumed to have full row rank.
struct StandardLp {
  std::string name;
  SparseMatrix a;
  Vec b, c;
  Vec upper;                   // length n; +inf outside upper_set
  std::vector<int> upper_set;  // sorted column indices with finite upper
  // original free column -> (positive part, negative part) columns
  std::map<int, std::pair<int, int>> free_origin;
  double objective_offset = 0.0;

  int m() const { return a.rows; }
  int n() const { return a.cols; }
  int n_upper() const { return static_cast<int>(upper_set.size()); }
  double objective(const Vec& x) const {
    return c.dot(x) + objective_offset;
  }
};

// Converts a RawLp to working form: trivial presolve (empty rows and
// columns dropped, fixed variables substituted, duplicate equality rows
// rejected), finite lower bounds shifted to zero, free variables split,
// inequality and ranged rows closed with slack columns, finite upper
// bounds collected into upper_set.
StandardLp standardize(const RawLp& raw);

}  // namespace dclp
