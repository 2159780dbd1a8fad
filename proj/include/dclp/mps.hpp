#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dclp/sparse.hpp"

namespace dclp {

enum class RowKind { kLe, kEq, kGe };

// LP as read from an MPS file: objective, constraint rows with their
// relations, optional ranges, and per-variable bounds (default [0, inf)).
struct RawLp {
  std::string name;
  std::string objective_name;
  SparseMatrix a;  // constraint rows only
  Vec c;
  double objective_constant = 0.0;  // minimize c'x + objective_constant
  std::vector<RowKind> row_kinds;
  Vec rhs;
  Vec range;  // NaN where no RANGES entry
  Vec lower, upper;
  std::vector<std::string> row_names, col_names;

  int rows() const { return a.rows; }
  int cols() const { return a.cols; }
  void validate() const;
};

// Reads fixed- or free-format MPS. Supported sections: NAME, ROWS,
// COLUMNS, RHS, RANGES, BOUNDS, ENDATA. Bound types UP, LO, FX, FR, MI;
// anything else (BV, integer markers, ...) is rejected. Duplicate
// COLUMNS entries are summed. Errors carry the offending line number.
RawLp parse_mps(std::istream& in);
RawLp parse_mps_string(const std::string& text);
RawLp parse_mps_file(const std::string& path);

// Writer for the same dialect; parse_mps(emit_mps(lp)) reproduces lp.
std::string emit_mps(const RawLp& lp);

}  // namespace dclp
