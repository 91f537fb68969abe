#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dmuss/codec.hpp"
#include "dmuss/planner.hpp"

namespace dmuss {

/// What observer k' learns about W_k. For uniform inputs through a linear
/// map, H(W_k | Y_{A_k'}) = (rate - leakage) symbols exactly.
struct PairPrivacy {
  std::size_t owner = 0;     // k
  std::size_t observer = 0;  // k'
  std::size_t base_rank = 0;   // rank T_{A_k'}
  std::size_t joint_rank = 0;  // rank [T_{A_k'}; E_k]
  std::size_t rate = 0;        // R_k
  std::size_t leakage() const noexcept { return base_rank + rate - joint_rank; }
  bool is_private() const noexcept { return leakage() == 0; }
};

struct PrivacyReport {
  std::vector<PairPrivacy> pairs;  // ordered pairs, owner-major
  bool all_private() const noexcept;
};

PrivacyReport check_privacy(const TransferMap& map, const AccessStructure& acc);
PrivacyReport check_privacy(const Plan& plan);

struct EntropyReport {
  std::size_t rank = 0;
  std::size_t nodes = 0;
  bool full() const noexcept { return rank == nodes; }
};

EntropyReport check_entropy(const TransferMap& map);
EntropyReport check_entropy(const Plan& plan);

struct AuditLimits {
  std::uint64_t max_points = std::uint64_t{1} << 20;  // p^inputs
};

struct PairAudit {
  std::size_t owner = 0;
  std::size_t observer = 0;
  bool independent = false;
};

/// Exhaustive verdicts over every input of F^inputs.
struct AuditReport {
  std::uint64_t points = 0;
  bool bijective = false;
  std::vector<PairAudit> pairs;   // same order as PrivacyReport::pairs
  std::vector<bool> decodable;    // W_k is a function of Y_{A_k}
  bool round_trip = true;         // codec round trip (plan overload only)
  bool all_private() const noexcept;
  bool all_decodable() const noexcept;
};

/// Throws Error{kTooLarge} if p^inputs exceeds the limit.
AuditReport brute_force_audit(const TransferMap& map, const AccessStructure& acc,
                              const AuditLimits& limits = {});
/// Also checks decode(encode(x)) == w on every input.
AuditReport brute_force_audit(const Plan& plan, const AuditLimits& limits = {});

struct CorrectnessReport {
  std::size_t trials = 0;
  std::size_t failures = 0;                 // trials with any wrong user
  std::vector<std::size_t> failing_users;   // ascending, distinct
  bool exact() const noexcept { return failures == 0; }
};

/// Random messages and pads through encode then decode. With
/// `corrupt_node`, that share is incremented by one before decoding.
CorrectnessReport check_correctness(const Plan& plan, std::size_t trials, std::uint64_t seed,
                                    std::optional<std::size_t> corrupt_node = std::nullopt);

}  // namespace dmuss
