#include "dclp/gen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "dclp/errors.hpp"

namespace dclp {

RawLp generate_random_lp(const GenSpec& spec) {
  const int m = spec.m, n = spec.n, k = spec.dense_cols;
  if (m < 2 || n < m + k || k < 0)
    throw DomainError("generate_random_lp: need m >= 2 and n >= m + dense");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> mag(0.3, 1.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto coeff = [&]() { return (unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng); };

  // sparse rows available to regular columns
  const int last_sparse_row = spec.rank_deficient_sparse ? m - 1 : m;
  std::uniform_int_distribution<int> row_pick(0, last_sparse_row - 1);
  std::uniform_int_distribution<int> nnz_pick(spec.sparse_nnz_min,
                                              spec.sparse_nnz_max);

  std::vector<Triplet> entries;
  // a scaled identity block keeps the sparse part full rank over the
  // rows it covers
  for (int j = 0; j < last_sparse_row; ++j)
    entries.push_back({j, j, mag(rng)});
  for (int j = last_sparse_row; j < n - k; ++j) {
    int nz = nnz_pick(rng);
    std::vector<int> rows;
    while (static_cast<int>(rows.size()) < nz) {
      int r = row_pick(rng);
      if (std::find(rows.begin(), rows.end(), r) == rows.end())
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end());
    for (int r : rows) entries.push_back({r, j, coeff()});
  }
  // dense columns: a fixed fraction of the rows, always covering the
  // last row so rank-deficient sparse parts stay full rank overall
  int dense_nnz = std::max(2, static_cast<int>(spec.dense_density * m));
  for (int j = n - k; j < n; ++j) {
    std::vector<int> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(dense_nnz);
    if (std::find(rows.begin(), rows.end(), m - 1) == rows.end())
      rows[0] = m - 1;
    std::sort(rows.begin(), rows.end());
    for (int r : rows) entries.push_back({r, j, coeff()});
  }

  RawLp lp;
  lp.name = "RAND" + std::to_string(spec.seed);
  lp.objective_name = "OBJ";
  lp.a = from_triplets(m, n, entries);

  // interior primal point and dual pair
  Vec xstar(n), zstar(n), ystar(m);
  for (int j = 0; j < n; ++j) xstar[j] = 0.5 + 1.5 * unit(rng);
  for (int j = 0; j < n; ++j) zstar[j] = 0.5 + 1.5 * unit(rng);
  for (int i = 0; i < m; ++i) ystar[i] = -1.0 + 2.0 * unit(rng);

  lp.rhs = spmv(lp.a, xstar);
  lp.c = spmv(lp.a, ystar, /*transpose=*/true) + zstar;

  lp.lower = Vec::Zero(n);
  lp.upper = Vec::Constant(n, std::numeric_limits<double>::infinity());
  for (int j = 0; j < n; ++j) {
    if (unit(rng) < spec.upper_frac) {
      lp.upper[j] = xstar[j] + 0.5 + 1.5 * unit(rng);
      lp.c[j] -= 0.5 + 0.5 * unit(rng);  // w* > 0 keeps the dual feasible
    }
  }

  lp.row_kinds.assign(m, RowKind::kEq);
  lp.range = Vec::Constant(m, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < m; ++i) lp.row_names.push_back("R" + std::to_string(i));
  for (int j = 0; j < n; ++j) lp.col_names.push_back("X" + std::to_string(j));
  lp.validate();
  return lp;
}

}  // namespace dclp
