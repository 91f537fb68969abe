#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dmuss/access.hpp"
#include "dmuss/error.hpp"

namespace dmuss {

/// Disjoint anchor sets Z*_k subset of A_k with |Z*_k| = R'_k.
struct SdrAssignment {
  std::vector<NodeSet> zstar;  // each sorted

  friend bool operator==(const SdrAssignment&, const SdrAssignment&) = default;
};

/// Hall-condition violation: the clones in `clones` (pairs (user, copy))
/// together see only `neighborhood`, which is smaller.
struct DeficientSet {
  std::vector<std::pair<std::size_t, std::size_t>> clones;
  NodeSet neighborhood;

  /// Distinct users appearing in `clones`, ascending.
  std::vector<std::size_t> users() const;
};

class NoSdrError : public Error {
 public:
  NoSdrError(const std::string& what, DeficientSet certificate)
      : Error(Errc::kNoSdr, what), certificate_(std::move(certificate)) {}

  const DeficientSet& certificate() const noexcept { return certificate_; }

 private:
  DeficientSet certificate_;
};

/// Matches every clone (k, j), j < R'_k, to a distinct node of A_k using
/// augmenting paths. Clones are processed in (k, j) order and each search
/// first takes the lowest free neighbour before trying to reroute, so the
/// result is deterministic. Throws NoSdrError with a certificate when no
/// such matching exists, Error{kShapeMismatch} if R' has the wrong length.
SdrAssignment find_sdr(const AccessStructure& acc, const IntRates& rprime);

/// Checks |Z*_k| = R'_k, Z*_k subset of A_k, and pairwise disjointness.
bool validate_sdr(const AccessStructure& acc, const IntRates& rprime, const SdrAssignment& a);

}  // namespace dmuss
