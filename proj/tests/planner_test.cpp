#include <random>

#include "doctest.h"
#include "dmuss/error.hpp"
#include "dmuss/planner.hpp"
#include "dmuss/worked_example.hpp"
#include "oracles.hpp"

using namespace dmuss;
using linalg::Matrix;

namespace {

std::size_t total_size(const AccessStructure& acc) {
  std::size_t u = 0;
  for (const auto& s : acc.sets()) u += s.size();
  return u;
}

// The rows of `basis` that land on the anchor positions, in position order.
Matrix anchor_rows(const Matrix& basis, const std::vector<std::size_t>& perm,
                   const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> rows;
  for (std::size_t pos : positions) rows.push_back(perm[pos]);
  return basis.select_rows(rows);
}

}  // namespace

TEST_CASE("worked example plan is valid and nonsingular") {
  const Plan plan = worked_example::plan();
  CHECK_NOTHROW(check_plan(plan));
  const Matrix a = placement_matrix(plan);
  CHECK(a.rows() == 17);
  CHECK(linalg::rank(plan.field, a) == 17);
  CHECK(linalg::det(plan.field, build_vpi(plan).vpi).value != 0);
}

TEST_CASE("choose_permutation on the five-node basis") {
  const gf::Field f(11, 8);
  const Matrix printed =
      Matrix::from_rows(f, {{1, 5, 2, 6, 1}, {1, 6, 3, 4, 4}, {1, 1, 1, 10, 7}}).transpose();
  const auto choice = choose_permutation(f, printed, {2, 3, 4});
  CHECK(choice.rows == std::vector<std::size_t>{0, 1, 2});
  CHECK(choice.perm == std::vector<std::size_t>{3, 4, 0, 1, 2});

  const AccessStructure acc = worked_example::access();
  const auto via_nodes = choose_permutation(f, acc, 3, printed, NodeSet{4, 5, 6});
  CHECK(via_nodes.perm == choice.perm);
}

TEST_CASE("choose_permutation sends the single basis row to the anchor") {
  const gf::Field f(11, 8);
  const Matrix v1 = Matrix::from_rows(f, {{1}, {8}, {4}, {7}});
  const auto choice = choose_permutation(f, v1, {3});
  CHECK(choice.perm[3] == 0);
  const auto empty = choose_permutation(f, Matrix(3, 0), {});
  CHECK(empty.perm == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("choose_permutation skips dependent leading rows") {
  const gf::Field f(7);
  const Matrix basis = Matrix::from_rows(f, {{1, 2}, {2, 4}, {0, 1}, {3, 3}});
  const auto choice = choose_permutation(f, basis, {1, 3});
  CHECK(choice.rows == std::vector<std::size_t>{0, 2});
  CHECK(choice.perm == std::vector<std::size_t>{1, 0, 3, 2});
}

TEST_CASE("make_plan examples and errors") {
  const gf::Field f(11, 8);
  const AccessStructure acc = worked_example::access();
  const Plan p = make_plan(f, acc, {1, 2, 2, 3}, 4);
  CHECK_NOTHROW(check_plan(p));
  CHECK(make_plan(f, acc, {1, 2, 2, 3}, 4) == p);

  const Plan tiny = make_plan(gf::Field(3), AccessStructure(std::vector<NodeSet>{{0}}), {1}, 0);
  CHECK(linalg::rank(tiny.field, placement_matrix(tiny)) == 1);

  try {
    (void)make_plan(f, acc, {3, 0, 0, 0}, 0);
    FAIL("outside tuple planned");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotInRegion);
  }
  try {
    (void)make_plan(gf::Field(5), acc, {1, 2, 2, 3}, 0);
    FAIL("tiny field accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kFieldTooSmall);
  }
}

TEST_CASE("choose_zeta: identity C and empty D accept the first draw") {
  const gf::Field f(13);
  VPiDecomposition dec{Matrix::identity(4), Matrix::identity(4), Matrix(4, 4), {}, {}};
  const auto zeta = choose_zeta(f, dec, 9);
  for (auto z : zeta) CHECK(z.value != 0);
}

TEST_CASE("choose_zeta falls back to the sweep") {
  const gf::Field f(13);
  VPiDecomposition dec{Matrix::identity(3), Matrix::identity(3), Matrix(3, 3), {}, {}};
  ZetaSearchOptions no_random;
  no_random.random_trials_per_node = 0;
  const auto zeta = choose_zeta(f, dec, 0, no_random);
  CHECK(zeta == gf::Vector(3, f.one()));
  // D = -I makes zeta = 1 singular; the sweep must move on.
  for (std::size_t i = 0; i < 3; ++i) dec.d(i, i) = f.neg(f.one());
  const auto moved = choose_zeta(f, dec, 0, no_random);
  CHECK(linalg::det(f, linalg::add(f, linalg::scale_rows(f, moved, dec.c), dec.d)).value != 0);
  no_random.sweep_limit = 1;
  CHECK_THROWS_AS((void)choose_zeta(f, dec, 0, no_random), Error);
}

TEST_CASE("fuzz: plans satisfy every structural invariant") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 80; ++t) {
    const gf::Field f(std::vector<std::uint64_t>{11, 13, 17}[t % 3]);
    const std::size_t k_users = 1 + rng() % 5;
    const AccessStructure acc = oracle::random_access(rng, k_users, 1 + rng() % 10);
    const auto region = enumerate_integer_region(acc);
    const IntRates r = region[rng() % region.size()];
    const Plan plan = make_plan(f, acc, r, rng());
    CHECK_NOTHROW(check_plan(plan));
    CHECK(linalg::rank(f, placement_matrix(plan)) == total_size(acc));

    const VPiDecomposition dec = build_vpi(plan);
    CHECK(linalg::add(f, linalg::scale_rows(f, dec.zeta, dec.c), dec.d) == dec.vpi);
    CHECK(linalg::det(f, dec.c).value != 0);
    CHECK(linalg::det(f, dec.vpi).value != 0);
    for (std::size_t i = 0; i < dec.c.rows(); ++i)
      for (std::size_t j = 0; j < dec.c.cols(); ++j)
        if (dec.c(i, j).value != 0) CHECK(dec.d(i, j).value == 0);

    for (std::size_t k = 0; k < k_users; ++k) {
      const Matrix basis = null_basis(f, acc.set(k).size(), plan.rprime[k]);
      std::vector<std::size_t> positions;
      for (std::size_t n : plan.zstar.zstar[k]) positions.push_back(*acc.position(k, n));
      CHECK(linalg::rank(f, anchor_rows(basis, plan.perms[k], positions)) == plan.rprime[k]);
      // Each B_k block alone is full column rank too.
      if (plan.tail_length(k) > 0) {
        Matrix b(acc.set(k).size(), plan.tail_length(k));
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t c = 0; c < b.cols(); ++c)
            b(i, c) = f.pow(plan.gamma(k, i), plan.rprime[k] + c);
        CHECK(linalg::rank(f, b) == plan.tail_length(k));
      }
    }
  }
}
