#include "dclp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dclp/errors.hpp"

namespace dclp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval a constraint row must hit, from its kind, rhs and
// optional RANGES entry.
std::pair<double, double> row_interval(RowKind kind, double rhs, double range) {
  if (std::isnan(range)) {
    switch (kind) {
      case RowKind::kEq: return {rhs, rhs};
      case RowKind::kLe: return {-kInf, rhs};
      case RowKind::kGe: return {rhs, kInf};
    }
  }
  double r = range;
  switch (kind) {
    case RowKind::kLe: return {rhs - std::abs(r), rhs};
    case RowKind::kGe: return {rhs, rhs + std::abs(r)};
    case RowKind::kEq:
      return r >= 0.0 ? std::pair<double, double>{rhs, rhs + r}
                      : std::pair<double, double>{rhs + r, rhs};
  }
  return {rhs, rhs};
}

}  // namespace

StandardLp standardize(const RawLp& raw) {
  raw.validate();
  const int m0 = raw.rows();
  const int n0 = raw.cols();

  Vec lo = raw.lower, up = raw.upper, c = raw.c, b = raw.rhs;
  std::vector<char> col_dropped(n0, 0), row_dropped(m0, 0);
  double offset = raw.objective_constant;

  // fixed variables: substitute and drop
  for (int j = 0; j < n0; ++j) {
    if (lo[j] == up[j] && std::isfinite(lo[j])) {
      offset += c[j] * lo[j];
      for (int p = raw.a.col_ptr[j]; p < raw.a.col_ptr[j + 1]; ++p)
        b[raw.a.row_idx[p]] -= raw.a.values[p] * lo[j];
      col_dropped[j] = 1;
    }
  }

  // empty columns: settle at the bound that minimizes the objective
  for (int j = 0; j < n0; ++j) {
    if (col_dropped[j] || raw.a.col_nnz(j) > 0) continue;
    double pick;
    if (c[j] > 0.0)
      pick = lo[j];
    else if (c[j] < 0.0)
      pick = up[j];
    else
      pick = std::isfinite(lo[j]) ? lo[j] : (std::isfinite(up[j]) ? up[j] : 0.0);
    if (!std::isfinite(pick))
      throw ModelError("unbounded objective on empty column " +
                       raw.col_names[j]);
    offset += c[j] * pick;
    col_dropped[j] = 1;
  }

  // surviving entries per row
  std::vector<std::vector<std::pair<int, double>>> row_entries(m0);
  for (int j = 0; j < n0; ++j) {
    if (col_dropped[j]) continue;
    for (int p = raw.a.col_ptr[j]; p < raw.a.col_ptr[j + 1]; ++p)
      row_entries[raw.a.row_idx[p]].push_back({j, raw.a.values[p]});
  }

  // empty rows: drop if trivially satisfied, otherwise infeasible
  for (int i = 0; i < m0; ++i) {
    if (!row_entries[i].empty()) continue;
    auto [rlo, rhi] = row_interval(raw.row_kinds[i], b[i], raw.range[i]);
    if (rlo > 0.0 || rhi < 0.0)
      throw ModelError("infeasible empty row " + raw.row_names[i]);
    row_dropped[i] = 1;
  }

  // duplicate equality rows make A rank deficient; reject them
  {
    std::map<std::vector<std::pair<int, double>>, int> seen;
    for (int i = 0; i < m0; ++i) {
      if (row_dropped[i] || raw.row_kinds[i] != RowKind::kEq) continue;
      auto key = row_entries[i];
      std::sort(key.begin(), key.end());
      auto [it, inserted] = seen.insert({std::move(key), i});
      if (!inserted)
        throw ModelError("duplicate equality rows " +
                         raw.row_names[it->second] + " and " +
                         raw.row_names[i]);
    }
  }

  StandardLp lp;
  lp.name = raw.name;

  // column layout: surviving originals, then negative parts of free
  // splits, then row slacks
  std::vector<int> col_id(n0, -1);
  std::vector<double> out_c, out_upper;
  int n = 0;
  for (int j = 0; j < n0; ++j) {
    if (col_dropped[j]) continue;
    col_id[j] = n++;
    out_c.push_back(0.0);
    out_upper.push_back(kInf);
  }
  std::vector<Triplet> entries;
  entries.reserve(raw.a.nnz() + m0);

  std::vector<double> bshift(m0, 0.0);
  struct FreeSplit {
    int orig, pos;
  };
  std::vector<FreeSplit> splits;

  for (int j = 0; j < n0; ++j) {
    if (col_dropped[j]) continue;
    int id = col_id[j];
    double sign = 1.0, shift = 0.0;
    if (std::isfinite(lo[j])) {
      shift = lo[j];
    } else if (std::isfinite(up[j])) {
      // reflect a variable unbounded below: x = up - x'
      sign = -1.0;
      shift = up[j];
    } else {
      splits.push_back({j, id});
    }
    out_c[id] = sign * c[j];
    offset += c[j] * shift;
    if (std::isfinite(lo[j]) && std::isfinite(up[j]))
      out_upper[id] = up[j] - lo[j];
    for (int p = raw.a.col_ptr[j]; p < raw.a.col_ptr[j + 1]; ++p) {
      int i = raw.a.row_idx[p];
      entries.push_back({i, id, sign * raw.a.values[p]});
      bshift[i] += raw.a.values[p] * shift;
    }
  }
  lp.objective_offset = offset;

  for (const FreeSplit& fs : splits) {
    int neg = n++;
    out_c.push_back(-c[fs.orig]);
    out_upper.push_back(kInf);
    for (int p = raw.a.col_ptr[fs.orig]; p < raw.a.col_ptr[fs.orig + 1]; ++p)
      entries.push_back({raw.a.row_idx[p], neg, -raw.a.values[p]});
    lp.free_origin[fs.orig] = {fs.pos, neg};
  }

  // rows: close every surviving row with a slack where needed
  std::vector<int> row_id(m0, -1);
  std::vector<double> out_b;
  int m = 0;
  for (int i = 0; i < m0; ++i) {
    if (row_dropped[i]) continue;
    row_id[i] = m++;
    auto [rlo, rhi] = row_interval(raw.row_kinds[i], b[i], raw.range[i]);
    if (std::isfinite(rlo)) rlo -= bshift[i];
    if (std::isfinite(rhi)) rhi -= bshift[i];
    if (rlo == rhi) {
      out_b.push_back(rhi);
      continue;
    }
    int s = n++;
    out_c.push_back(0.0);
    if (std::isfinite(rhi)) {
      // a'x + s = hi, with s <= hi - lo when the row is two-sided
      entries.push_back({i, s, 1.0});
      out_b.push_back(rhi);
      out_upper.push_back(std::isfinite(rlo) ? rhi - rlo : kInf);
    } else {
      // a'x - s = lo
      entries.push_back({i, s, -1.0});
      out_b.push_back(rlo);
      out_upper.push_back(kInf);
    }
  }

  for (Triplet& t : entries) t.row = row_id[t.row];
  lp.a = from_triplets(m, n, entries);
  lp.b = Eigen::Map<Vec>(out_b.data(), m);
  lp.c = Eigen::Map<Vec>(out_c.data(), n);
  lp.upper = Eigen::Map<Vec>(out_upper.data(), n);
  for (int j = 0; j < n; ++j)
    if (std::isfinite(lp.upper[j])) lp.upper_set.push_back(j);
  return lp;
}

}  // namespace dclp
