#include <random>

#include "doctest.h"
#include "dmuss/composite.hpp"
#include "dmuss/error.hpp"
#include "dmuss/worked_example.hpp"
#include "oracles.hpp"

using namespace dmuss;

namespace {

bool round_trips(const CompositeScheme& s, std::uint64_t seed) {
  const MessageSet msgs = random_messages(s, seed);
  const CompositeEncoding enc = encode(s, msgs, seed + 1);
  for (const auto& node : enc.shares)
    if (node.size() != s.blocks()) return false;
  for (std::size_t k = 0; k < s.users(); ++k) {
    NodeBlocks view;
    for (std::size_t n : s.access().set(k)) view.push_back(enc.shares[n]);
    if (decode(s, k, view) != msgs[k]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("memory sharing extremes repeat one plan") {
  const gf::Field f(11, 8);
  const AccessStructure acc = worked_example::access();
  const Plan a = make_plan(f, acc, {1, 2, 2, 3}, 1);
  const Plan b = make_plan(f, acc, {0, 1, 1, 1}, 2);
  const CompositeScheme all_a = memory_share(a, b, 3, 3);
  REQUIRE(all_a.segments().size() == 1);
  CHECK(all_a.segments()[0].plan == a);
  CHECK(all_a.rates() == to_rates({1, 2, 2, 3}));
  const CompositeScheme all_b = memory_share(a, b, 0, 2);
  REQUIRE(all_b.segments().size() == 1);
  CHECK(all_b.segments()[0].plan == b);
  CHECK(round_trips(all_a, 4));
  CHECK(round_trips(all_b, 5));
}

TEST_CASE("half and half with the zero tuple") {
  const gf::Field f(11, 8);
  const AccessStructure acc = worked_example::access();
  const CompositeScheme s =
      memory_share(worked_example::plan(), make_plan(f, acc, {0, 0, 0, 0}, 3), 1, 2);
  CHECK(s.blocks() == 2);
  CHECK(s.rates() == RateTuple{Rate(1, 2), Rate(1), Rate(1), Rate(3, 2)});
  CHECK(s.message_length(3) == 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(round_trips(s, seed));
}

TEST_CASE("incompatible plans") {
  const Plan a = worked_example::plan();
  const Plan other_field = make_plan(gf::Field(13), a.acc, {1, 2, 2, 3}, 0);
  const Plan other_access =
      make_plan(a.field, AccessStructure::from_one_based({{1, 2}, {2, 3}}), {1, 1}, 0);
  for (const Plan* b : {&other_field, &other_access}) {
    try {
      (void)memory_share(a, *b, 1, 2);
      FAIL("mixed incompatible plans");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kIncompatiblePlans);
    }
  }
  CHECK_THROWS_AS(memory_share(a, a, 3, 2), Error);
  CHECK_THROWS_AS(memory_share(a, a, 0, 0), Error);
}

TEST_CASE("integer decomposition of rational rates") {
  const AccessStructure acc = worked_example::access();
  const auto parts = integer_decomposition(acc, {Rate(1, 2), Rate(1), Rate(1), Rate(3, 2)});
  std::size_t blocks = 0;
  std::vector<std::int64_t> sum(4, 0);
  for (const auto& c : parts) {
    CHECK(in_capacity_region(acc, to_rates(c.rates)).in_region);
    blocks += c.blocks;
    for (std::size_t k = 0; k < 4; ++k) sum[k] += static_cast<std::int64_t>(c.rates[k] * c.blocks);
  }
  CHECK(blocks == 2);
  CHECK(sum == std::vector<std::int64_t>{1, 2, 2, 3});
  CHECK(integer_decomposition(acc, to_rates({1, 2, 2, 3})) ==
        std::vector<IntegerCorner>{{{1, 2, 2, 3}, 1}});
  CHECK_THROWS_AS(integer_decomposition(acc, {Rate(5, 2), Rate(0), Rate(0), Rate(0)}), Error);
}

TEST_CASE("fuzz: rational points between two corners plan and round-trip") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const gf::Field f(13);
    const AccessStructure acc = oracle::random_access(rng, 2 + rng() % 3, 2 + rng() % 7);
    const auto region = enumerate_integer_region(acc);
    const IntRates& a = region[rng() % region.size()];
    const IntRates& b = region[rng() % region.size()];
    const std::int64_t den = 2 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t num = 1 + static_cast<std::int64_t>(rng() % (den - 1));
    RateTuple r;
    for (std::size_t k = 0; k < a.size(); ++k) {
      r.push_back(Rate(num, den) * Rate(static_cast<std::int64_t>(a[k])) +
                  Rate(den - num, den) * Rate(static_cast<std::int64_t>(b[k])));
    }
    const CompositeScheme s = plan_rational(f, acc, r, rng());
    CHECK(s.rates() == r);
    CHECK(round_trips(s, rng()));
  }
}
