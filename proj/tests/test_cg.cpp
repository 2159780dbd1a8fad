#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "dclp/cg.hpp"
#include "dclp/errors.hpp"

using namespace dclp;

namespace {

std::function<Vec(const Vec&)> dense_op(const Mat& a) {
  return [a](const Vec& v) { return Vec(a * v); };
}

Mat random_spd_dense(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = g(rng);
  Mat m = b * b.transpose();
  m.diagonal().array() += 1.0;
  return m;
}

}  // namespace

TEST_CASE("identity operator converges in one iteration") {
  Vec rhs(4);
  rhs << 1, -2, 3, 0.5;
  auto [x, rep] = conjugate_gradient(dense_op(Mat::Identity(4, 4)), rhs, 1e-12,
                                     10);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  CHECK(x.isApprox(rhs));
}

TEST_CASE("diagonal operator solves within rank-many iterations") {
  Vec rhs(3);
  rhs << 1, 2, 3;
  Mat d = rhs.asDiagonal();
  auto [x, rep] = conjugate_gradient(dense_op(d), rhs, 1e-12, 10);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 3);
  CHECK(x.isApprox(Vec::Ones(3), 1e-10));
}

TEST_CASE("exact termination tracks distinct eigenvalue count") {
  // diagonal with 3 distinct values spread over 12 entries
  Vec d(12);
  for (int i = 0; i < 12; ++i) d[i] = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 4.0 : 9.0);
  auto [x, rep] =
      conjugate_gradient(dense_op(Mat(d.asDiagonal())), Vec::Ones(12), 1e-12, 50);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 4);  // distinct eigenvalues + 1
}

TEST_CASE("random SPD matches a dense direct solve") {
  // random orthogonal basis with a controlled spectrum in [1, 20]
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat b(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) b(i, j) = g(rng);
  Mat q = Eigen::HouseholderQR<Mat>(b).householderQ();
  Vec d(50);
  for (int i = 0; i < 50; ++i) d[i] = std::pow(20.0, i / 49.0);
  Mat a = q * d.asDiagonal() * q.transpose();
  Vec rhs = Vec::Random(50);
  auto [x, rep] = conjugate_gradient(dense_op(a), rhs, 1e-10, 60);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 50);
  Vec want = a.llt().solve(rhs);
  CHECK((x - want).norm() <= 1e-8 * (1.0 + want.norm()));
}

TEST_CASE("energy-norm error decreases every iteration") {
  std::mt19937_64 rng(9);
  Mat a = random_spd_dense(20, rng);
  Vec rhs = Vec::Random(20);
  Vec exact = a.llt().solve(rhs);
  auto energy = [&](const Vec& x) {
    Vec e = x - exact;
    return std::sqrt(e.dot(a * e));
  };
  // CG is deterministic from x0 = 0: running i iterations reproduces the
  // i-th iterate
  double prev = energy(Vec::Zero(20));
  for (int i = 1; i <= 12; ++i) {
    auto [x, rep] = conjugate_gradient(dense_op(a), rhs, 1e-16, i);
    double cur = energy(x);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("zero right-hand side returns zero immediately") {
  auto [x, rep] =
      conjugate_gradient(dense_op(Mat::Identity(3, 3)), Vec::Zero(3), 1e-8, 5);
  CHECK(rep.converged);
  CHECK(rep.iterations == 0);
  CHECK(x.isZero());
}

TEST_CASE("iteration cap leaves converged unset with the best iterate") {
  std::mt19937_64 rng(21);
  Mat a = random_spd_dense(30, rng);
  a.diagonal().array() += 100.0;  // still SPD, spread spectrum
  Vec rhs = Vec::Random(30);
  auto [x, rep] = conjugate_gradient(dense_op(a), rhs, 1e-15, 2);
  CHECK(!rep.converged);
  CHECK(rep.iterations == 2);
  CHECK(rep.final_rel_residual > 1e-15);
}

TEST_CASE("indefinite operator is reported, not silently accepted") {
  Mat a = Mat::Identity(3, 3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(conjugate_gradient(dense_op(a), Vec::Ones(3), 1e-8, 10),
                  OperatorError);
}

TEST_CASE("NaN from the operator is an operator error") {
  auto bad = [](const Vec& v) {
    Vec out = v;
    out[0] = std::numeric_limits<double>::quiet_NaN();
    return out;
  };
  CHECK_THROWS_AS(conjugate_gradient(bad, Vec::Ones(2), 1e-8, 10),
                  OperatorError);
}

TEST_CASE("invalid tolerance is rejected") {
  CHECK_THROWS_AS(
      conjugate_gradient(dense_op(Mat::Identity(2, 2)), Vec::Ones(2), 0.0, 1),
      DomainError);
}
