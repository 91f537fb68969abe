#include <random>

#include "doctest.h"
#include "dmuss/error.hpp"
#include "dmuss/linalg.hpp"
#include "oracles.hpp"

using dmuss::Errc;
using dmuss::Error;
using dmuss::gf::Element;
using dmuss::gf::Field;
using dmuss::gf::Vector;
using namespace dmuss::linalg;
using oracle::vec;

namespace {

Vector ints(const Field& f, std::initializer_list<std::int64_t> xs) {
  Vector v;
  for (auto x : xs) v.push_back(f.element(x));
  return v;
}

}  // namespace

TEST_CASE("build_B entries") {
  const Field f(11, 8);
  const Matrix b14 = build_B(f, 1, 4);
  REQUIRE(b14.rows() == 3);
  REQUIRE(b14.cols() == 4);
  CHECK(Vector(b14.row(0).begin(), b14.row(0).end()) == vec({8, 9, 6, 4}));
  // Row i is (8^(i))^j for j = 1..4.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(b14(i, j) == f.pow(f.gamma_pow(1 + i), j + 1));

  const Matrix b24 = build_B(f, 2, 4);
  CHECK(b24 == Matrix::from_rows(f, {{9, 4, 3, 5}, {6, 3, 7, 9}}));
  CHECK(build_B(f, 0, 1) == Matrix::from_rows(f, {{1}}));
  CHECK_THROWS_AS(build_B(f, 4, 4), Error);
}

TEST_CASE("build_B has rank n - m for n <= p - 1") {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const Field f(p);
    for (std::size_t n = 1; n <= p - 1; ++n)
      for (std::size_t m = 0; m < n; ++m) CHECK(rank(f, build_B(f, m, n)) == n - m);
  }
}

TEST_CASE("rank") {
  const Field f(11, 8);
  Matrix v(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) v(i, j) = f.pow(f.gamma_pow(i + 1), j);
  CHECK(rank(f, v) == 4);
  CHECK(rank(f, Matrix(3, 5)) == 0);
  CHECK(rank(f, build_B(f, 1, 4)) == 3);
}

TEST_CASE("null space examples") {
  const Field f(11, 8);
  const NullBasis n1 = null_space(f, build_B(f, 1, 4));
  REQUIRE(n1.dim == 1);
  CHECK(oracle::same_span(f, n1.as_columns(4), Matrix::from_rows(f, {{1}, {8}, {4}, {7}})));

  const NullBasis n3 = null_space(f, build_B(f, 3, 5));
  REQUIRE(n3.dim == 3);
  const Matrix printed =
      Matrix::from_rows(f, {{1, 5, 2, 6, 1}, {1, 6, 3, 4, 4}, {1, 1, 1, 10, 7}}).transpose();
  CHECK(oracle::same_span(f, n3.as_columns(5), printed));

  CHECK(null_space(f, Matrix::identity(4)).dim == 0);
}

TEST_CASE("null space basis follows the reduced echelon convention") {
  const Field f(13);
  const Matrix a = Matrix::from_rows(f, {{1, 2, 0, 3}, {0, 0, 1, 4}});
  const NullBasis n = null_space(f, a);
  REQUIRE(n.dim == 2);
  // Free columns 1 and 3 in order.
  CHECK(n.vectors[0] == ints(f, {-2, 1, 0, 0}));
  CHECK(n.vectors[1] == ints(f, {-3, 0, -4, 1}));
}

TEST_CASE("solve examples") {
  const Field f(11);
  const Vector s = ints(f, {3, 1, 4});
  CHECK(solve(f, Matrix::identity(3), s) == s);
  try {
    (void)solve(f, Matrix(2, 2), ints(f, {1, 1}));
    FAIL("singular accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kSingular);
  }
  CHECK_THROWS_AS((void)solve(f, Matrix(2, 3), ints(f, {1, 1})), Error);
}

TEST_CASE("det examples") {
  const Field f(11, 8);
  CHECK(det(f, Matrix::identity(5)) == f.one());
  CHECK(det(f, Matrix::from_rows(f, {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}})) == f.zero());
  const Matrix ext = stack(Matrix::from_rows(f, {{1, 1, 1, 1}}), build_B(f, 1, 4));
  CHECK(det(f, ext) == oracle::cofactor_det(f, ext));
  CHECK(det(f, ext).value != 0);
}

TEST_CASE("fuzzed solve, rank-nullity and determinant agreement") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2, 3, 7, 13}) {
    const Field f(p);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + rng() % 7;
      const std::size_t m = 1 + rng() % 7;
      const Matrix sq = oracle::random_matrix(rng, f, n, n);
      const Element d = det(f, sq);
      CHECK(d == oracle::cofactor_det(f, sq));
      const bool full = rank(f, sq) == n;
      CHECK(full == (d.value != 0));
      const Vector s = oracle::random_matrix(rng, f, n, 1).column(0);
      if (full) {
        CHECK(apply(f, sq, solve(f, sq, s)) == s);
      } else {
        CHECK_THROWS_AS((void)solve(f, sq, s), Error);
      }
      const Matrix rect = oracle::random_matrix(rng, f, n, m);
      const NullBasis nb = null_space(f, rect);
      CHECK(rank(f, rect) + nb.dim == m);
      for (const auto& v : nb.vectors) CHECK(apply(f, rect, v) == Vector(n));
    }
  }
}

TEST_CASE("solve on larger random systems") {
  std::mt19937_64 rng(3);
  const Field f(17);
  int solved = 0;
  for (int t = 0; t < 40; ++t) {
    const Matrix a = oracle::random_matrix(rng, f, 12, 12);
    if (rank(f, a) < 12) continue;
    const Vector s = oracle::random_matrix(rng, f, 12, 1).column(0);
    CHECK(apply(f, a, solve(f, a, s)) == s);
    ++solved;
  }
  CHECK(solved > 20);
}

TEST_CASE("RowSpace grows only on independent rows") {
  const Field f(7);
  RowSpace rs(f, 3);
  CHECK(rs.add(vec({1, 2, 3})));
  CHECK_FALSE(rs.add(vec({2, 4, 6})));
  CHECK(rs.contains(vec({3, 6, 2})));
  CHECK(rs.add(vec({0, 1, 0})));
  CHECK(rs.rank() == 2);
  CHECK_FALSE(rs.contains(vec({0, 0, 1})));
}
