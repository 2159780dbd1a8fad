#include <doctest.h>

#include <random>

#include "dclp/errors.hpp"
#include "dclp/gen.hpp"
#include "dclp/model.hpp"
#include "dclp/partition.hpp"
#include "oracles.hpp"

using namespace dclp;

namespace {

RawLp single_row(RowKind kind, double rhs_v) {
  RawLp raw;
  raw.name = "T";
  raw.objective_name = "OBJ";
  raw.a = from_triplets(1, 1, {{0, 0, 1.0}});
  raw.c = Vec::Ones(1);
  raw.rhs = Vec::Constant(1, rhs_v);
  raw.range = Vec::Constant(1, std::numeric_limits<double>::quiet_NaN());
  raw.row_kinds = {kind};
  raw.lower = Vec::Zero(1);
  raw.upper = Vec::Constant(1, std::numeric_limits<double>::infinity());
  raw.row_names = {"R1"};
  raw.col_names = {"X1"};
  return raw;
}

}  // namespace

TEST_CASE("greater-than row gets a surplus column") {
  StandardLp lp = standardize(single_row(RowKind::kGe, 1.0));
  CHECK(lp.m() == 1);
  CHECK(lp.n() == 2);
  Mat a = to_dense(lp.a);
  CHECK(a(0, 0) == 1.0);
  CHECK(a(0, 1) == -1.0);
  CHECK(lp.b[0] == 1.0);
  CHECK(lp.upper_set.empty());
}

TEST_CASE("free variable splits into mirrored columns") {
  RawLp raw = single_row(RowKind::kEq, 1.0);
  raw.lower[0] = -std::numeric_limits<double>::infinity();
  raw.c[0] = 2.5;
  StandardLp lp = standardize(raw);
  CHECK(lp.n() == 2);
  Mat a = to_dense(lp.a);
  CHECK(a(0, 0) == 1.0);
  CHECK(a(0, 1) == -1.0);
  CHECK(lp.c[0] == 2.5);
  CHECK(lp.c[1] == -2.5);
  REQUIRE(lp.free_origin.count(0));
  CHECK(lp.free_origin.at(0) == std::pair<int, int>{0, 1});
}

TEST_CASE("finite upper bound lands in the upper set") {
  RawLp raw = single_row(RowKind::kEq, 1.0);
  raw.upper[0] = 3.0;
  StandardLp lp = standardize(raw);
  REQUIRE(lp.upper_set == std::vector<int>{0});
  CHECK(lp.upper[0] == 3.0);
  // x = 3, v = 0 satisfies x + v = u
  CHECK(lp.upper[0] - 3.0 == 0.0);
}

TEST_CASE("shifted lower bound folds into the right-hand side") {
  RawLp raw = single_row(RowKind::kEq, 5.0);
  raw.lower[0] = 2.0;
  raw.c[0] = 3.0;
  StandardLp lp = standardize(raw);
  CHECK(lp.b[0] == 3.0);              // 5 - 1*2
  CHECK(lp.objective_offset == 6.0);  // 3*2
  CHECK(lp.upper_set.empty());
}

TEST_CASE("fixed variables are substituted away") {
  RawLp raw = single_row(RowKind::kEq, 5.0);
  raw.a = from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, 2.0}});
  raw.c = Vec(2);
  raw.c << 1.0, 7.0;
  raw.lower = Vec(2);
  raw.lower << 0.0, 1.5;
  raw.upper = Vec(2);
  raw.upper << std::numeric_limits<double>::infinity(), 1.5;
  raw.col_names = {"X1", "X2"};
  StandardLp lp = standardize(raw);
  CHECK(lp.n() == 1);
  CHECK(lp.b[0] == 2.0);  // 5 - 2*1.5
  CHECK(lp.objective_offset == doctest::Approx(10.5));
}

TEST_CASE("duplicate equality rows are rejected") {
  RawLp raw = single_row(RowKind::kEq, 1.0);
  raw.a = from_triplets(2, 1, {{0, 0, 2.0}, {1, 0, 2.0}});
  raw.rhs = Vec::Constant(2, 1.0);
  raw.range = Vec::Constant(2, std::numeric_limits<double>::quiet_NaN());
  raw.row_kinds = {RowKind::kEq, RowKind::kEq};
  raw.row_names = {"R1", "R2"};
  CHECK_THROWS_AS(standardize(raw), ModelError);
}

TEST_CASE("inconsistent bounds are rejected") {
  RawLp raw = single_row(RowKind::kEq, 1.0);
  raw.lower[0] = 2.0;
  raw.upper[0] = 1.0;
  CHECK_THROWS_AS(standardize(raw), ModelError);
}

TEST_CASE("ranged rows become bounded slacks") {
  RawLp raw = single_row(RowKind::kLe, 8.0);
  raw.range[0] = 3.0;  // 5 <= x <= 8
  StandardLp lp = standardize(raw);
  CHECK(lp.n() == 2);
  CHECK(lp.b[0] == 8.0);
  REQUIRE(lp.upper_set == std::vector<int>{1});
  CHECK(lp.upper[1] == 3.0);
}

TEST_CASE("standardization preserves the optimum against brute force") {
  // random raws with every feature: bounds, frees, inequalities
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int m = 2 + static_cast<int>(u(rng) * 2);  // 2..3
    int n = m + 1 + static_cast<int>(u(rng) * 2);
    RawLp raw;
    raw.name = "B";
    raw.objective_name = "OBJ";
    std::vector<Triplet> ts;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (u(rng) < 0.7) ts.push_back({i, j, val(rng)});
    raw.a = from_triplets(m, n, ts);
    raw.c = Vec::NullaryExpr(n, [&]() { return val(rng); });
    raw.rhs = Vec::NullaryExpr(m, [&]() { return val(rng); });
    raw.range = Vec::Constant(m, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < m; ++i)
      raw.row_kinds.push_back(u(rng) < 0.4   ? RowKind::kEq
                              : u(rng) < 0.5 ? RowKind::kLe
                                             : RowKind::kGe);
    raw.lower = Vec::Zero(n);
    raw.upper = Vec::Constant(n, std::numeric_limits<double>::infinity());
    for (int j = 0; j < n; ++j) {
      double r = u(rng);
      if (r < 0.3)
        raw.upper[j] = 0.5 + u(rng) * 2.0;  // bounded
      else if (r < 0.4)
        raw.lower[j] = -std::numeric_limits<double>::infinity();  // free
      else if (r < 0.5)
        raw.lower[j] = -1.0 + u(rng);  // shifted lower
    }
    for (int i = 0; i < m; ++i) raw.row_names.push_back("R" + std::to_string(i));
    for (int j = 0; j < n; ++j) raw.col_names.push_back("X" + std::to_string(j));

    StandardLp lp;
    try {
      lp = standardize(raw);
    } catch (const ModelError&) {
      continue;  // e.g. a randomly generated row came out empty
    }
    if (lp.n() > 10) continue;  // keep enumeration affordable

    // library conversion solved by brute force ...
    double via_standard;
    oracle::LpStatus st = oracle::vertex_enum_optimum(
        to_dense(lp.a), lp.b, lp.c, lp.upper, &via_standard);
    // ... against a fully independent test-side conversion of the raw LP
    // to the same form, also solved by brute force
    int l = 0;
    for (int i = 0; i < m; ++i)
      if (raw.row_kinds[i] != RowKind::kEq) ++l;
    int splits = 0, n2 = 0;
    std::vector<int> map_pos(n), map_neg(n, -1);
    for (int j = 0; j < n; ++j) {
      map_pos[j] = n2++;
      if (std::isinf(raw.lower[j]) && std::isinf(raw.upper[j]))
        map_neg[j] = n + splits++;
    }
    Mat a2 = Mat::Zero(m, n + splits + l);
    Vec c2 = Vec::Zero(n + splits + l);
    Vec up2 = Vec::Constant(n + splits + l,
                            std::numeric_limits<double>::infinity());
    Vec b2 = raw.rhs;
    Mat ad = to_dense(raw.a);
    bool representable = true;
    for (int j = 0; j < n; ++j) {
      double lo = raw.lower[j];
      if (std::isfinite(lo)) {
        a2.col(j) = ad.col(j);
        c2[j] = raw.c[j];
        b2 -= ad.col(j) * lo;
        if (std::isfinite(raw.upper[j])) up2[j] = raw.upper[j] - lo;
      } else if (map_neg[j] >= 0) {
        a2.col(j) = ad.col(j);
        a2.col(map_neg[j]) = -ad.col(j);
        c2[j] = raw.c[j];
        c2[map_neg[j]] = -raw.c[j];
      } else {
        representable = false;  // (-inf, up] not exercised here
      }
    }
    int slack = n + splits;
    for (int i = 0; i < m; ++i) {
      if (raw.row_kinds[i] == RowKind::kLe)
        a2(i, slack++) = 1.0;
      else if (raw.row_kinds[i] == RowKind::kGe)
        a2(i, slack++) = -1.0;
    }
    if (!representable) continue;
    double via_manual;
    oracle::LpStatus st2 =
        oracle::vertex_enum_optimum(a2, b2, c2, up2, &via_manual);
    CHECK(st == st2);
    if (st == oracle::LpStatus::kOptimal) {
      double offset = 0.0;
      for (int j = 0; j < n; ++j)
        if (std::isfinite(raw.lower[j])) offset += raw.c[j] * raw.lower[j];
      CHECK(via_standard + lp.objective_offset ==
            doctest::Approx(via_manual + offset).epsilon(1e-7));
      ++checked;
    }
  }
  CHECK(checked >= 5);  // enough feasible instances actually compared
}

TEST_CASE("density rule: small instances stay all sparse by default") {
  std::mt19937_64 rng(1);
  SparseMatrix a =
      from_triplets(10, 4, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}});
  ColumnPartition p = detect_dense(a);
  CHECK(p.dense_idx.empty());
  CHECK(p.sparse_idx.size() == 4);
}

TEST_CASE("density rule: large instance thresholds at max(min_abs, frac*m)") {
  std::vector<Triplet> ts;
  for (int i = 0; i < 400; ++i) ts.push_back({i, 1, 1.0});
  for (int j = 0; j < 5; ++j)
    if (j != 1)
      for (int i = 0; i < 5; ++i) ts.push_back({i * 7 + j, j, 1.0});
  SparseMatrix a = from_triplets(1000, 5, ts);
  ColumnPartition p = detect_dense(a);
  CHECK(p.threshold_used == 300);
  CHECK(p.dense_idx == std::vector<int>{1});
}

TEST_CASE("density rule: force uses the permissive threshold") {
  SparseMatrix a = from_triplets(
      10, 3,
      [] {
        std::vector<Triplet> ts;
        for (int i = 0; i < 2; ++i) ts.push_back({i, 0, 1.0});
        for (int i = 0; i < 6; ++i) ts.push_back({i, 1, 1.0});
        for (int i = 0; i < 9; ++i) ts.push_back({i, 2, 1.0});
        return ts;
      }());
  DensityPolicy policy;
  policy.force = true;
  policy.frac = 0.5;
  ColumnPartition p = detect_dense(a, policy);
  CHECK(p.threshold_used == 5);
  CHECK(p.dense_idx == std::vector<int>{1, 2});
  CHECK(p.sparse_idx == std::vector<int>{0});
  // P1 orders sparse first
  CHECK(p.p1.perm == std::vector<int>{0, 1, 2});
}

TEST_CASE("density partition is invariant under row permutation") {
  std::mt19937_64 rng(41);
  GenSpec spec;
  spec.m = 30;
  spec.n = 70;
  spec.dense_cols = 2;
  spec.seed = 5;
  RawLp raw = generate_random_lp(spec);
  DensityPolicy policy;
  policy.force = true;
  policy.frac = 0.35;
  ColumnPartition p1 = detect_dense(raw.a, policy);

  // permute rows
  std::vector<int> rp(30);
  std::iota(rp.begin(), rp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::vector<Triplet> ts;
  for (int j = 0; j < raw.a.cols; ++j)
    for (int p = raw.a.col_ptr[j]; p < raw.a.col_ptr[j + 1]; ++p)
      ts.push_back({rp[raw.a.row_idx[p]], j, raw.a.values[p]});
  ColumnPartition p2 = detect_dense(from_triplets(30, 70, ts), policy);
  CHECK(p1.dense_idx == p2.dense_idx);
  CHECK(p1.sparse_idx == p2.sparse_idx);
}

TEST_CASE("generator plants the requested dense columns") {
  GenSpec spec;
  spec.m = 40;
  spec.n = 90;
  spec.dense_cols = 3;
  spec.seed = 11;
  RawLp raw = generate_random_lp(spec);
  CHECK(raw.rows() == 40);
  CHECK(raw.cols() == 90);
  DensityPolicy policy;
  policy.force = true;
  policy.frac = 0.35;
  ColumnPartition p = detect_dense(raw.a, policy);
  CHECK(p.dense_idx == std::vector<int>{87, 88, 89});
}
