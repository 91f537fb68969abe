#include "dmuss/composite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "dmuss/error.hpp"
#include "rng.hpp"

namespace dmuss {

CompositeScheme::CompositeScheme(std::vector<Segment> segments) {
  for (auto& s : segments) {
    if (s.blocks > 0) segments_.push_back(std::move(s));
  }
  if (segments_.empty()) throw Error(Errc::kIncompatiblePlans, "composite scheme has no blocks");
  for (const auto& s : segments_) {
    if (!(s.plan.field == field()) || !(s.plan.acc == access())) {
      throw Error(Errc::kIncompatiblePlans, "plans differ in field or access structure");
    }
    blocks_ += s.blocks;
  }
}

std::size_t CompositeScheme::message_length(std::size_t k) const {
  std::size_t total = 0;
  for (const auto& s : segments_) total += s.blocks * s.plan.rates.at(k);
  return total;
}

RateTuple CompositeScheme::rates() const {
  RateTuple out;
  for (std::size_t k = 0; k < users(); ++k) {
    out.emplace_back(static_cast<std::int64_t>(message_length(k)),
                     static_cast<std::int64_t>(blocks_));
  }
  return out;
}

CompositeScheme memory_share(const Plan& plan_a, const Plan& plan_b, std::size_t a, std::size_t b) {
  if (b == 0 || a > b) {
    throw Error(Errc::kIncompatiblePlans, "memory sharing needs 0 <= a <= b and b >= 1");
  }
  if (!(plan_a.field == plan_b.field) || !(plan_a.acc == plan_b.acc)) {
    throw Error(Errc::kIncompatiblePlans, "plans differ in field or access structure");
  }
  return CompositeScheme({Segment{plan_a, a}, Segment{plan_b, b - a}});
}

CompositeEncoding encode(const CompositeScheme& scheme, const MessageSet& msgs, std::uint64_t seed) {
  const std::size_t k_users = scheme.users();
  if (msgs.size() != k_users) throw Error(Errc::kShapeMismatch, "need one message per user");
  for (std::size_t k = 0; k < k_users; ++k) {
    if (msgs[k].size() != scheme.message_length(k)) {
      throw Error(Errc::kShapeMismatch, "message length mismatch for user " + std::to_string(k + 1));
    }
  }
  CompositeEncoding out;
  out.shares.assign(scheme.access().nodes(), {});
  std::vector<std::size_t> cursor(k_users, 0);
  std::size_t block = 0;
  for (const auto& seg : scheme.segments()) {
    for (std::size_t j = 0; j < seg.blocks; ++j, ++block) {
      MessageSet slice;
      for (std::size_t k = 0; k < k_users; ++k) {
        auto first = msgs[k].begin() + static_cast<std::ptrdiff_t>(cursor[k]);
        slice.emplace_back(first, first + static_cast<std::ptrdiff_t>(seg.plan.rates[k]));
        cursor[k] += seg.plan.rates[k];
      }
      Encoding e = encode(seg.plan, slice, detail::mix_seed(seed, block));
      for (std::size_t n = 0; n < e.y.size(); ++n) out.shares[n].push_back(e.y[n]);
      out.pads.push_back(std::move(e.pads));
    }
  }
  return out;
}

gf::Vector decode(const CompositeScheme& scheme, std::size_t k, const NodeBlocks& shares) {
  const NodeSet& set = scheme.access().set(k);
  if (shares.size() != set.size()) throw Error(Errc::kShapeMismatch, "expected one block list per node of A_k");
  for (const auto& s : shares) {
    if (s.size() != scheme.blocks()) throw Error(Errc::kShapeMismatch, "node block count mismatch");
  }
  gf::Vector w;
  std::size_t block = 0;
  gf::Vector column(set.size());
  for (const auto& seg : scheme.segments()) {
    for (std::size_t j = 0; j < seg.blocks; ++j, ++block) {
      for (std::size_t i = 0; i < set.size(); ++i) column[i] = shares[i][block];
      const Decoded d = decode(seg.plan, k, column);
      w.insert(w.end(), d.w_hat.begin(), d.w_hat.end());
    }
  }
  return w;
}

MessageSet random_messages(const CompositeScheme& scheme, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 3));
  MessageSet msgs;
  for (std::size_t k = 0; k < scheme.users(); ++k) {
    gf::Vector w(scheme.message_length(k));
    for (auto& e : w) e = rng.element(scheme.field());
    msgs.push_back(std::move(w));
  }
  return msgs;
}

namespace {

bool in_region_scaled(const AccessStructure& acc, const IntRates& x, std::size_t d) {
  RateTuple r;
  for (std::size_t v : x) r.emplace_back(static_cast<std::int64_t>(v), static_cast<std::int64_t>(d));
  return in_capacity_region(acc, r).in_region;
}

// Splits x (a point of d * region) into d integer points of the region.
bool split(const AccessStructure& acc, const IntRates& x, std::size_t d,
           std::vector<IntRates>& out) {
  if (d == 1) {
    if (!in_region_scaled(acc, x, 1)) return false;
    out.push_back(x);
    return true;
  }
  const std::size_t k_users = x.size();
  std::vector<std::size_t> lo(k_users), hi(k_users);
  std::vector<std::size_t> free_users;
  for (std::size_t k = 0; k < k_users; ++k) {
    lo[k] = x[k] / d;
    hi[k] = lo[k] + (x[k] % d != 0 ? 1 : 0);
    if (hi[k] != lo[k]) free_users.push_back(k);
  }
  // Prefer rounding up the lowest-index users first.
  const std::size_t choices = std::size_t{1} << free_users.size();
  for (std::size_t m = choices; m-- > 0;) {
    IntRates y = lo;
    for (std::size_t b = 0; b < free_users.size(); ++b) {
      if (m >> (free_users.size() - 1 - b) & 1U) y[free_users[b]] = hi[free_users[b]];
    }
    if (!in_region_scaled(acc, y, 1)) continue;
    IntRates rest(k_users);
    for (std::size_t k = 0; k < k_users; ++k) rest[k] = x[k] - y[k];
    if (!in_region_scaled(acc, rest, d - 1)) continue;
    out.push_back(y);
    if (split(acc, rest, d - 1, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::vector<IntegerCorner> integer_decomposition(const AccessStructure& acc, const RateTuple& r) {
  const auto membership = in_capacity_region(acc, r);
  if (!membership.in_region) {
    throw Error(Errc::kNotInRegion, "rate tuple violates " + membership.violated->to_string());
  }
  if (acc.users() > 16) throw Error(Errc::kTooLarge, "rational decomposition supports at most 16 users");
  std::int64_t d = 1;
  for (const Rate& q : r) d = std::lcm(d, q.denominator());
  IntRates x;
  for (const Rate& q : r) x.push_back(static_cast<std::size_t>(q.numerator() * (d / q.denominator())));

  std::vector<IntRates> parts;
  if (!split(acc, x, static_cast<std::size_t>(d), parts)) {
    throw Error(Errc::kPlanningFailed, "no equitable integer split of the rate tuple found");
  }
  std::map<IntRates, std::size_t> counts;
  std::vector<IntRates> order;
  for (const auto& p : parts) {
    if (counts[p]++ == 0) order.push_back(p);
  }
  std::vector<IntegerCorner> out;
  for (const auto& p : order) out.push_back(IntegerCorner{p, counts[p]});
  return out;
}

CompositeScheme plan_rational(const gf::Field& f, const AccessStructure& acc, const RateTuple& r,
                              std::uint64_t seed, const ZetaSearchOptions& options) {
  std::vector<Segment> segs;
  std::uint64_t stream = 0;
  for (const auto& corner : integer_decomposition(acc, r)) {
    segs.push_back(Segment{make_plan(f, acc, corner.rates, detail::mix_seed(seed, stream++), options),
                           corner.blocks});
  }
  return CompositeScheme(std::move(segs));
}

}  // namespace dmuss
