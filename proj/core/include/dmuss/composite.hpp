#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dmuss/codec.hpp"
#include "dmuss/planner.hpp"

namespace dmuss {

/// `blocks` consecutive storage slots per node, each running `plan` once.
struct Segment {
  Plan plan;
  std::size_t blocks = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Several integer-rate plans over the same access structure and field,
/// laid side by side in node storage. Reaches rational rate tuples.
class CompositeScheme {
 public:
  /// Throws Error{kIncompatiblePlans} if the plans disagree on field or
  /// access structure, or if there is no block at all. Zero-block segments
  /// are dropped.
  explicit CompositeScheme(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const AccessStructure& access() const { return segments_.front().plan.acc; }
  const gf::Field& field() const { return segments_.front().plan.field; }
  std::size_t users() const { return access().users(); }
  /// Symbols stored per node.
  std::size_t blocks() const noexcept { return blocks_; }
  /// Message symbols of user k across all blocks.
  std::size_t message_length(std::size_t k) const;
  /// Per-node-symbol rate tuple achieved.
  RateTuple rates() const;

  friend bool operator==(const CompositeScheme&, const CompositeScheme&) = default;

 private:
  std::vector<Segment> segments_;
  std::size_t blocks_ = 0;
};

/// First `a` of `b` slots carry plan_a, the rest plan_b. Achieves
/// (a/b) R^A + (1 - a/b) R^B. Throws Error{kIncompatiblePlans} on mismatched
/// plans or if a > b or b == 0.
CompositeScheme memory_share(const Plan& plan_a, const Plan& plan_b, std::size_t a, std::size_t b);

/// shares[n] holds the blocks() symbols of node n.
using NodeBlocks = std::vector<gf::Vector>;

struct CompositeEncoding {
  NodeBlocks shares;
  std::vector<PadSet> pads;  // one per block
};

/// messages[k] has message_length(k) symbols: segment by segment, block by
/// block, R_k symbols each. Block j draws its pads from a seed derived from
/// `seed` and j.
CompositeEncoding encode(const CompositeScheme& scheme, const MessageSet& msgs, std::uint64_t seed);
/// `shares` lists the node blocks of A_k in ascending node order.
gf::Vector decode(const CompositeScheme& scheme, std::size_t k, const NodeBlocks& shares);
MessageSet random_messages(const CompositeScheme& scheme, std::uint64_t seed);

struct IntegerCorner {
  IntRates rates;
  std::size_t blocks = 0;
  friend bool operator==(const IntegerCorner&, const IntegerCorner&) = default;
};

/// Writes an in-region rate tuple with common denominator d as d integer
/// in-region tuples (equal ones merged), each slot taking the floor or ceil
/// of its share. Throws Error{kNotInRegion} for tuples outside the region
/// and Error{kPlanningFailed} if no such split exists.
std::vector<IntegerCorner> integer_decomposition(const AccessStructure& acc, const RateTuple& r);

/// Plans each corner of integer_decomposition() with its own derived seed.
CompositeScheme plan_rational(const gf::Field& f, const AccessStructure& acc, const RateTuple& r,
                              std::uint64_t seed, const ZetaSearchOptions& options = {});

}  // namespace dmuss
