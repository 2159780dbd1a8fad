#include "dclp/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line_no) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'", line_no);
  }
  if (pos != tok.size())
    throw ParseError("trailing characters in number '" + tok + "'", line_no);
  return v;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RawLp::validate() const {
  a.validate();
  if (c.size() != a.cols || static_cast<int>(col_names.size()) != a.cols ||
      lower.size() != a.cols || upper.size() != a.cols)
    throw DimensionError("RawLp: column arrays inconsistent");
  if (static_cast<int>(row_kinds.size()) != a.rows || rhs.size() != a.rows ||
      range.size() != a.rows || static_cast<int>(row_names.size()) != a.rows)
    throw DimensionError("RawLp: row arrays inconsistent");
  for (int i = 0; i < a.rows; ++i)
    if (!std::isfinite(rhs[i])) throw ModelError("RawLp: rhs must be finite");
  for (int j = 0; j < a.cols; ++j)
    if (lower[j] > upper[j])
      throw ModelError("RawLp: lower bound exceeds upper bound on " +
                       col_names[j]);
}

RawLp parse_mps(std::istream& in) {
  enum Section { kNone, kRows, kColumns, kRhs, kRanges, kBounds, kDone };
  Section section = kNone;
  bool saw_rows = false, saw_columns = false;

  RawLp lp;
  std::unordered_map<std::string, int> row_of;   // constraint rows
  std::unordered_map<std::string, char> free_rows;  // extra N rows, ignored
  std::unordered_map<std::string, int> col_of;
  std::vector<Triplet> entries;
  std::vector<double> obj, rhs, range, lower, upper;
  std::vector<char> lower_set, upper_set;

  auto constraint_row = [&](const std::string& name, int line_no) {
    auto it = row_of.find(name);
    if (it == row_of.end())
      throw ParseError("unknown row '" + name + "'", line_no);
    return it->second;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;

    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      std::vector<std::string> t = tokenize(line);
      const std::string& head = t[0];
      if (head == "NAME") {
        if (t.size() > 1) lp.name = t[1];
      } else if (head == "ROWS") {
        if (section >= kRows && section != kNone)
          throw ParseError("ROWS section out of order", line_no);
        section = kRows;
        saw_rows = true;
      } else if (head == "COLUMNS") {
        if (!saw_rows) throw ParseError("COLUMNS before ROWS", line_no);
        section = kColumns;
        saw_columns = true;
      } else if (head == "RHS") {
        if (!saw_columns) throw ParseError("RHS before COLUMNS", line_no);
        section = kRhs;
      } else if (head == "RANGES") {
        if (!saw_columns) throw ParseError("RANGES before COLUMNS", line_no);
        section = kRanges;
      } else if (head == "BOUNDS") {
        if (!saw_columns) throw ParseError("BOUNDS before COLUMNS", line_no);
        section = kBounds;
      } else if (head == "ENDATA") {
        section = kDone;
        break;
      } else if (head == "OBJSENSE" || head == "OBJSENCE") {
        throw ParseError("OBJSENSE section is not supported", line_no);
      } else {
        throw ParseError("unknown section '" + head + "'", line_no);
      }
      continue;
    }

    std::vector<std::string> t = tokenize(line);
    if (t.empty()) continue;
    switch (section) {
      case kRows: {
        if (t.size() != 2)
          throw ParseError("ROWS line needs a type and a name", line_no);
        const std::string& kind = t[0];
        const std::string& name = t[1];
        if (kind == "N") {
          // first N row is the objective; later free rows are ignored
          if (lp.objective_name.empty())
            lp.objective_name = name;
          else
            free_rows[name] = 1;
        } else if (kind == "E" || kind == "L" || kind == "G") {
          if (row_of.count(name))
            throw ParseError("duplicate row name '" + name + "'", line_no);
          row_of[name] = static_cast<int>(lp.row_names.size());
          lp.row_names.push_back(name);
          lp.row_kinds.push_back(kind == "E"   ? RowKind::kEq
                                 : kind == "L" ? RowKind::kLe
                                               : RowKind::kGe);
        } else {
          throw ParseError("unknown row type '" + kind + "'", line_no);
        }
        break;
      }
      case kColumns: {
        if (t.size() >= 3 && t[1] == "'MARKER'")
          throw ParseError("integer markers are not supported", line_no);
        if (t.size() != 3 && t.size() != 5)
          throw ParseError("COLUMNS line needs name + 1 or 2 pairs", line_no);
        const std::string& cname = t[0];
        int j;
        auto it = col_of.find(cname);
        if (it == col_of.end()) {
          j = static_cast<int>(lp.col_names.size());
          col_of[cname] = j;
          lp.col_names.push_back(cname);
          obj.push_back(0.0);
          lower.push_back(0.0);
          upper.push_back(kInf);
          lower_set.push_back(0);
          upper_set.push_back(0);
        } else {
          j = it->second;
        }
        for (size_t f = 1; f + 1 < t.size(); f += 2) {
          double v = parse_number(t[f + 1], line_no);
          if (t[f] == lp.objective_name) {
            obj[j] += v;
          } else if (free_rows.count(t[f])) {
            continue;
          } else {
            entries.push_back({constraint_row(t[f], line_no), j, v});
          }
        }
        break;
      }
      case kRhs:
      case kRanges: {
        if (t.size() != 3 && t.size() != 5)
          throw ParseError("line needs set name + 1 or 2 pairs", line_no);
        rhs.resize(lp.row_names.size(), 0.0);
        range.resize(lp.row_names.size(),
                     std::numeric_limits<double>::quiet_NaN());
        for (size_t f = 1; f + 1 < t.size(); f += 2) {
          double v = parse_number(t[f + 1], line_no);
          if (section == kRhs && t[f] == lp.objective_name) {
            lp.objective_constant = -v;
            continue;
          }
          if (free_rows.count(t[f])) continue;
          int i = constraint_row(t[f], line_no);
          if (section == kRhs)
            rhs[i] = v;
          else
            range[i] = v;
        }
        break;
      }
      case kBounds: {
        const std::string& kind = t[0];
        bool has_value = (kind == "UP" || kind == "LO" || kind == "FX");
        if (t.size() != (has_value ? 4u : 3u))
          throw ParseError("malformed BOUNDS line", line_no);
        if (kind != "UP" && kind != "LO" && kind != "FX" && kind != "FR" &&
            kind != "MI")
          throw ParseError("unsupported bound type '" + kind + "'", line_no);
        auto it = col_of.find(t[2]);
        if (it == col_of.end())
          throw ParseError("unknown column '" + t[2] + "'", line_no);
        int j = it->second;
        double v = has_value ? parse_number(t[3], line_no) : 0.0;
        if (kind == "UP") {
          upper[j] = v;
          upper_set[j] = 1;
          // classic MPS rule: a negative upper bound with no explicit
          // lower bound makes the variable unbounded below
          if (v < 0.0 && !lower_set[j]) lower[j] = -kInf;
        } else if (kind == "LO") {
          lower[j] = v;
          lower_set[j] = 1;
        } else if (kind == "FX") {
          lower[j] = upper[j] = v;
          lower_set[j] = upper_set[j] = 1;
        } else if (kind == "FR") {
          lower[j] = -kInf;
          upper[j] = kInf;
          lower_set[j] = upper_set[j] = 1;
        } else {  // MI
          lower[j] = -kInf;
          lower_set[j] = 1;
        }
        break;
      }
      case kNone:
        throw ParseError("data before any section header", line_no);
      case kDone:
        break;
    }
  }
  if (section != kDone) throw ParseError("missing ENDATA", line_no);
  if (!saw_rows || !saw_columns)
    throw ParseError("file lacks ROWS or COLUMNS section", line_no);

  const int m = static_cast<int>(lp.row_names.size());
  const int n = static_cast<int>(lp.col_names.size());
  lp.a = from_triplets(m, n, entries);
  lp.c = Eigen::Map<Vec>(obj.data(), n);
  lp.rhs = Vec::Zero(m);
  for (int i = 0; i < std::min<int>(m, rhs.size()); ++i) lp.rhs[i] = rhs[i];
  lp.range = Vec::Constant(m, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < std::min<int>(m, range.size()); ++i)
    lp.range[i] = range[i];
  lp.lower = Eigen::Map<Vec>(lower.data(), n);
  lp.upper = Eigen::Map<Vec>(upper.data(), n);
  lp.validate();
  return lp;
}

RawLp parse_mps_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_mps(ss);
}

RawLp parse_mps_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return parse_mps(f);
}

std::string emit_mps(const RawLp& lp) {
  std::ostringstream out;
  out << "NAME          " << lp.name << "\n";
  out << "ROWS\n";
  out << " N  " << (lp.objective_name.empty() ? "OBJ" : lp.objective_name)
      << "\n";
  for (int i = 0; i < lp.rows(); ++i) {
    char k = lp.row_kinds[i] == RowKind::kEq   ? 'E'
             : lp.row_kinds[i] == RowKind::kLe ? 'L'
                                               : 'G';
    out << " " << k << "  " << lp.row_names[i] << "\n";
  }
  out << "COLUMNS\n";
  const std::string obj =
      lp.objective_name.empty() ? "OBJ" : lp.objective_name;
  for (int j = 0; j < lp.cols(); ++j) {
    if (lp.c[j] != 0.0)
      out << "    " << lp.col_names[j] << "  " << obj << "  "
          << format_number(lp.c[j]) << "\n";
    for (int p = lp.a.col_ptr[j]; p < lp.a.col_ptr[j + 1]; ++p)
      out << "    " << lp.col_names[j] << "  " << lp.row_names[lp.a.row_idx[p]]
          << "  " << format_number(lp.a.values[p]) << "\n";
  }
  out << "RHS\n";
  if (lp.objective_constant != 0.0)
    out << "    RHS  " << obj << "  " << format_number(-lp.objective_constant)
        << "\n";
  for (int i = 0; i < lp.rows(); ++i)
    if (lp.rhs[i] != 0.0)
      out << "    RHS  " << lp.row_names[i] << "  " << format_number(lp.rhs[i])
          << "\n";
  bool any_range = false;
  for (int i = 0; i < lp.rows(); ++i)
    if (!std::isnan(lp.range[i])) any_range = true;
  if (any_range) {
    out << "RANGES\n";
    for (int i = 0; i < lp.rows(); ++i)
      if (!std::isnan(lp.range[i]))
        out << "    RNG  " << lp.row_names[i] << "  "
            << format_number(lp.range[i]) << "\n";
  }
  std::ostringstream bounds;
  for (int j = 0; j < lp.cols(); ++j) {
    double lo = lp.lower[j], up = lp.upper[j];
    const std::string& name = lp.col_names[j];
    if (lo == 0.0 && up == kInf) continue;
    if (lo == -kInf && up == kInf) {
      bounds << " FR BND  " << name << "\n";
      continue;
    }
    if (lo == up) {
      bounds << " FX BND  " << name << "  " << format_number(lo) << "\n";
      continue;
    }
    if (lo == -kInf)
      bounds << " MI BND  " << name << "\n";
    else if (lo != 0.0)
      bounds << " LO BND  " << name << "  " << format_number(lo) << "\n";
    if (up != kInf)
      bounds << " UP BND  " << name << "  " << format_number(up) << "\n";
  }
  if (!bounds.str().empty()) out << "BOUNDS\n" << bounds.str();
  out << "ENDATA\n";
  return out.str();
}

}  // namespace dclp
