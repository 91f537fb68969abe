#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace dmuss {

/// Users and storage nodes are 0-based in the library. File formats and
/// human-readable output use 1-based labels.
using NodeSet = std::vector<std::size_t>;  // sorted, unique

/// The access sets A_1..A_K over nodes [0, N). Every set is nonempty and the
/// sets together cover every node.
class AccessStructure {
 public:
  /// Throws Error{kInvalidInput} if a set is empty or the union is not
  /// exactly [0, N) for N = number of distinct nodes mentioned.
  explicit AccessStructure(std::vector<NodeSet> sets);
  /// As above but additionally checks the union has exactly `nodes` members.
  AccessStructure(std::vector<NodeSet> sets, std::size_t nodes);

  /// Convenience for 1-based node labels as used in files.
  static AccessStructure from_one_based(const std::vector<std::vector<std::size_t>>& sets);
  std::vector<std::vector<std::size_t>> to_one_based() const;

  std::size_t users() const noexcept { return sets_.size(); }
  std::size_t nodes() const noexcept { return nodes_; }
  const NodeSet& set(std::size_t k) const { return sets_.at(k); }
  const std::vector<NodeSet>& sets() const noexcept { return sets_; }
  std::size_t max_set_size() const noexcept;

  bool contains(std::size_t k, std::size_t node) const;
  /// Position of `node` within set(k), if present.
  std::optional<std::size_t> position(std::size_t k, std::size_t node) const;
  /// |union of A_k over k in mask|; bit k selects user k.
  std::size_t union_size(std::uint64_t mask) const;
  /// |A_k \ A_j|
  std::size_t difference_size(std::size_t k, std::size_t j) const;

  friend bool operator==(const AccessStructure&, const AccessStructure&) = default;

 private:
  std::vector<NodeSet> sets_;
  std::size_t nodes_ = 0;
};

using Rate = boost::rational<std::int64_t>;
using RateTuple = std::vector<Rate>;
using IntRates = std::vector<std::size_t>;

RateTuple to_rates(const IntRates& r);
/// Throws Error{kInvalidInput} unless every rate is a non-negative integer.
IntRates to_int_rates(const RateTuple& r);

inline constexpr std::size_t kMaxMembershipUsers = 20;

/// One inequality of the capacity region.
struct Constraint {
  enum class Kind { kPairwise, kCutset };

  Kind kind = Kind::kCutset;
  /// kPairwise: {k}. kCutset: the subset S, ascending.
  std::vector<std::size_t> users;
  /// kPairwise: the user j minimising |A_k \ A_j| (first on ties).
  std::optional<std::size_t> witness;
  std::int64_t bound = 0;

  /// e.g. "R_1 + R_2 <= 6" (1-based).
  std::string to_string() const;
  Rate lhs(const RateTuple& r) const;
  bool holds(const RateTuple& r) const { return lhs(r) <= Rate(bound); }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// All inequalities of the region: one pairwise bound per user (only when
/// K >= 2) followed by one cutset bound per nonempty subset in increasing
/// bitmask order. Throws Error{kTooManyUsers} for K > 20.
std::vector<Constraint> capacity_constraints(const AccessStructure& acc);

struct MembershipReport {
  bool in_region = true;
  /// First violated inequality in capacity_constraints() order.
  std::optional<Constraint> violated;
  /// Set for K == 1: the pairwise bound is vacuous and only cutsets apply.
  bool pairwise_vacuous = false;
};

/// Throws Error{kTooManyUsers} for K > 20, Error{kShapeMismatch} if the
/// tuple length differs from K and Error{kInvalidInput} for negative rates.
MembershipReport in_capacity_region(const AccessStructure& acc, const RateTuple& r);

/// min over j != k of |A_k \ A_j|. Throws Error{kSingleUser} if K == 1.
std::size_t pairwise_bound(const AccessStructure& acc, std::size_t k);

/// Integer storage quotas R' >= R with every cutset respected and
/// sum(R') == N, grown greedily one unit at a time on the lowest-index user
/// that stays feasible. Throws Error{kNotInRegion} if R is outside the region.
IntRates augment_rprime(const AccessStructure& acc, const IntRates& r);

/// True iff R' satisfies every cutset and sums to N.
bool is_valid_rprime(const AccessStructure& acc, const IntRates& rprime);

/// Every integer tuple of the region in lexicographic order.
/// Throws Error{kTooLarge} unless K <= 6 and N <= 12.
std::vector<IntRates> enumerate_integer_region(const AccessStructure& acc);

}  // namespace dmuss
