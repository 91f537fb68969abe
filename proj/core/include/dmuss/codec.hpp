#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dmuss/gf.hpp"
#include "dmuss/linalg.hpp"
#include "dmuss/planner.hpp"

namespace dmuss {

/// messages[k] = w_k, R_k symbols, lowest-degree coefficient first.
using MessageSet = std::vector<gf::Vector>;

/// Per-user pad coefficients. random[k] holds P_{k,R_k..R'_k-1} (drawn
/// uniformly), tail[k] holds P_{k,R'_k..|A_k|-1} (solved).
struct PadSet {
  std::vector<gf::Vector> random;
  std::vector<gf::Vector> tail;
  friend bool operator==(const PadSet&, const PadSet&) = default;
};

/// y[n] is the symbol stored at node n.
using ShareVector = gf::Vector;

/// The master's linear system A b = s. Unknowns b are the pad tails of every
/// user in user order, followed by y in node order.
struct PlacementSystem {
  linalg::Matrix a;
  gf::Vector s;
  std::vector<std::size_t> tail_offsets;  // start of user k's tail in b
  std::size_t share_offset = 0;           // start of y in b
};

/// Throws Error{kShapeMismatch} if message or pad lengths disagree with the plan.
PlacementSystem assemble_system(const Plan& plan, const MessageSet& msgs,
                                const std::vector<gf::Vector>& random_pads);

struct Encoding {
  ShareVector y;
  PadSet pads;
  gf::Vector b;  // solution of the placement system
};

/// Draws the random pads from `seed` and solves the placement system.
Encoding encode(const Plan& plan, const MessageSet& msgs, std::uint64_t seed);
Encoding encode_with_pads(const Plan& plan, const MessageSet& msgs,
                          const std::vector<gf::Vector>& random_pads);

/// Uniform random messages of the plan's rates.
MessageSet random_messages(const Plan& plan, std::uint64_t seed);
std::vector<gf::Vector> random_pads(const Plan& plan, std::uint64_t seed);

struct Decoded {
  gf::Vector w_hat;  // R_k symbols
  gf::Vector p_hat;  // |A_k| - R_k symbols
};

/// Recovers user k's polynomial from the shares of A_k (ascending node
/// order) by solving the Vandermonde system in gamma_{k,i}.
Decoded decode(const Plan& plan, std::size_t k, std::span<const gf::Element> shares);

/// Picks Y_{A_k} out of a full share vector.
gf::Vector restrict_to(const AccessStructure& acc, std::size_t k, std::span<const gf::Element> y);

/// The linear map y = T x with x = (w_1, ..., w_K, o_1, ..., o_K), where o_k
/// are the random pads. T is N x N.
struct TransferMap {
  gf::Field field;
  linalg::Matrix t;
  std::vector<std::size_t> message_lengths;
  std::vector<std::size_t> pad_lengths;

  std::size_t message_offset(std::size_t k) const;
  std::size_t pad_offset(std::size_t k) const;
  std::size_t inputs() const noexcept { return t.cols(); }
  /// Stacks messages and pads into T's input layout.
  gf::Vector stack_input(const MessageSet& msgs, const std::vector<gf::Vector>& pads) const;

  /// Throws Error{kShapeMismatch} unless the lengths add up to t.cols().
  static TransferMap from_matrix(const gf::Field& field, linalg::Matrix t, std::vector<std::size_t> message_lengths,
                                 std::vector<std::size_t> pad_lengths);
};

/// Built by encoding every standard basis input.
TransferMap transfer_map(const Plan& plan);

}  // namespace dmuss
