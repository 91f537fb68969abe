#include <random>

#include "doctest.h"
#include "dmuss/codec.hpp"
#include "dmuss/error.hpp"
#include "dmuss/worked_example.hpp"
#include "oracles.hpp"

using namespace dmuss;
using oracle::vec;

namespace {

gf::Vector negated(const gf::Field& f, std::initializer_list<std::uint32_t> xs) {
  gf::Vector v;
  for (auto x : xs) v.push_back(f.neg(gf::Element{x}));
  return v;
}

gf::Vector slice(const gf::Vector& v, std::size_t from, std::size_t n) {
  return gf::Vector(v.begin() + static_cast<std::ptrdiff_t>(from),
                    v.begin() + static_cast<std::ptrdiff_t>(from + n));
}

std::vector<gf::Vector> no_pads(const Plan& p) {
  std::vector<gf::Vector> pads;
  for (std::size_t k = 0; k < p.users(); ++k) pads.emplace_back(p.pad_length(k));
  return pads;
}

// g(x) = sum c_r x^r
gf::Element eval(const gf::Field& f, const gf::Vector& c, gf::Element x) {
  gf::Element acc = f.zero();
  for (std::size_t r = c.size(); r-- > 0;) acc = f.add(f.mul(acc, x), c[r]);
  return acc;
}

}  // namespace

TEST_CASE("worked example: right-hand side, solution and shares") {
  const Plan plan = worked_example::plan();
  const gf::Field& f = plan.field;
  const PlacementSystem sys = assemble_system(plan, worked_example::messages(), no_pads(plan));
  CHECK(slice(sys.s, 0, 4) == negated(f, {1, 1, 1, 1}));
  CHECK(slice(sys.s, 4, 4) == negated(f, {5, 1, 6, 4}));
  CHECK(slice(sys.s, 8, 4) == negated(f, {4, 4, 4, 4}));
  CHECK(slice(sys.s, 12, 5) == negated(f, {3, 5, 7, 10, 10}));

  const Encoding enc = encode(plan, worked_example::messages(), 123);
  CHECK(enc.b == vec({5, 2, 7, 2, 4, 9, 7, 6, 5, 5, 5, 8, 7, 3, 2, 2, 9}));
  CHECK(enc.y == vec({5, 5, 8, 7, 3, 2, 2, 9}));
}

TEST_CASE("worked example: retrieval") {
  const Plan plan = worked_example::plan();
  const gf::Vector y = vec({5, 5, 8, 7, 3, 2, 2, 9});
  const Decoded d1 = decode(plan, 0, restrict_to(plan.acc, 0, y));
  CHECK(d1.w_hat == vec({1}));
  CHECK(d1.p_hat == vec({5, 2, 7}));
  CHECK(decode(plan, 1, restrict_to(plan.acc, 1, y)).p_hat == vec({2, 4}));
  CHECK(decode(plan, 2, restrict_to(plan.acc, 2, y)).w_hat == vec({4, 0}));
  const Decoded d4 = decode(plan, 3, restrict_to(plan.acc, 3, y));
  CHECK(d4.w_hat == vec({3, 5, 7}));
  CHECK(d4.p_hat == vec({6, 5}));
  CHECK_THROWS_AS(decode(plan, 3, vec({1, 2})), Error);
}

TEST_CASE("zero-quota user contributes a zero right-hand side") {
  const gf::Field f(5);
  const AccessStructure acc({{0, 1}, {1}});
  const Plan plan = make_plan(f, acc, {1, 0}, 2);
  REQUIRE(plan.rprime == IntRates{2, 0});
  const PlacementSystem sys = assemble_system(plan, {vec({3}), {}}, {vec({4}), {}});
  CHECK(slice(sys.s, 2, 1) == gf::Vector(1));
  const Encoding enc = encode(plan, {vec({3}), {}}, 1);
  CHECK(decode(plan, 1, restrict_to(acc, 1, enc.y)).w_hat.empty());
}

TEST_CASE("known pads move to the right-hand side") {
  const gf::Field f(7);
  const AccessStructure acc({{0, 1}, {1, 2}});
  const Plan plan = make_plan(f, acc, {1, 1}, 5);
  REQUIRE(plan.rprime == IntRates{2, 1});
  const MessageSet msgs{vec({3}), vec({6})};
  const std::vector<gf::Vector> pads{vec({4}), {}};
  const PlacementSystem sys = assemble_system(plan, msgs, pads);
  for (std::size_t i = 0; i < 2; ++i) {
    const gf::Element g = plan.gamma(0, i);
    CHECK(sys.s[i] == f.neg(f.add(gf::Element{3}, f.mul(gf::Element{4}, g))));
  }
  // Every equation holds on the solved unknowns.
  const Encoding enc = encode_with_pads(plan, msgs, pads);
  for (std::size_t k = 0; k < 2; ++k) {
    gf::Vector coeffs = msgs[k];
    coeffs.insert(coeffs.end(), pads[k].begin(), pads[k].end());
    coeffs.insert(coeffs.end(), enc.pads.tail[k].begin(), enc.pads.tail[k].end());
    for (std::size_t i = 0; i < acc.set(k).size(); ++i) {
      const std::size_t n = acc.set(k)[i];
      CHECK(eval(f, coeffs, plan.gamma(k, i)) == f.neg(f.mul(plan.alphas[k][i], enc.y[n])));
    }
  }
}

TEST_CASE("homogeneous input gives zero shares") {
  const gf::Field f(3);
  const Plan plan = make_plan(f, AccessStructure(std::vector<NodeSet>{{0, 1}}), {2}, 0);
  CHECK(encode_with_pads(plan, {vec({0, 0})}, {{}}).y == gf::Vector(2));
}

TEST_CASE("shape errors") {
  const Plan plan = worked_example::plan();
  CHECK_THROWS_AS(assemble_system(plan, {vec({1})}, no_pads(plan)), Error);
  MessageSet bad = worked_example::messages();
  bad[3].pop_back();
  CHECK_THROWS_AS(encode(plan, bad, 0), Error);
}

TEST_CASE("transfer map reproduces the worked example") {
  const Plan plan = worked_example::plan();
  const TransferMap t = transfer_map(plan);
  CHECK(t.t.rows() == 8);
  CHECK(t.t.cols() == 8);
  const gf::Vector x = t.stack_input(worked_example::messages(), no_pads(plan));
  CHECK(linalg::apply(plan.field, t.t, x) == vec({5, 5, 8, 7, 3, 2, 2, 9}));
  CHECK(linalg::apply(plan.field, t.t, gf::Vector(8)) == gf::Vector(8));
}

TEST_CASE("fuzz: transfer map, linearity and round trip") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    const gf::Field f(std::vector<std::uint64_t>{11, 13, 17}[t % 3]);
    const AccessStructure acc = oracle::random_access(rng, 1 + rng() % 4, 2 + rng() % 7);
    const auto region = enumerate_integer_region(acc);
    const Plan plan = make_plan(f, acc, region[rng() % region.size()], rng());
    const TransferMap map = transfer_map(plan);
    CHECK(linalg::rank(f, map.t) == plan.nodes());

    for (int s = 0; s < 10; ++s) {
      const MessageSet m1 = random_messages(plan, rng());
      const MessageSet m2 = random_messages(plan, rng());
      const auto o1 = random_pads(plan, rng());
      const auto o2 = random_pads(plan, rng());
      const Encoding e1 = encode_with_pads(plan, m1, o1);
      const Encoding e2 = encode_with_pads(plan, m2, o2);
      CHECK(linalg::apply(f, map.t, map.stack_input(m1, o1)) == e1.y);

      MessageSet ms = m1;
      auto os = o1;
      for (std::size_t k = 0; k < plan.users(); ++k) {
        for (std::size_t r = 0; r < ms[k].size(); ++r) ms[k][r] = f.add(m1[k][r], m2[k][r]);
        for (std::size_t r = 0; r < os[k].size(); ++r) os[k][r] = f.add(o1[k][r], o2[k][r]);
      }
      gf::Vector sum(plan.nodes());
      for (std::size_t n = 0; n < sum.size(); ++n) sum[n] = f.add(e1.y[n], e2.y[n]);
      CHECK(encode_with_pads(plan, ms, os).y == sum);

      for (std::size_t k = 0; k < plan.users(); ++k) {
        const Decoded d = decode(plan, k, restrict_to(acc, k, e1.y));
        CHECK(d.w_hat == m1[k]);
        gf::Vector pads = o1[k];
        pads.insert(pads.end(), e1.pads.tail[k].begin(), e1.pads.tail[k].end());
        CHECK(d.p_hat == pads);
      }
    }
  }
}
