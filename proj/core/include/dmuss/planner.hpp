#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dmuss/access.hpp"
#include "dmuss/gf.hpp"
#include "dmuss/linalg.hpp"
#include "dmuss/sdr.hpp"

namespace dmuss {

/// Every public constant of a scheme. Shared by the master node and all
/// users; contains nothing secret.
///
/// For user k and the i-th node n_{k,i} of A_k (ascending node order):
///   gamma_{k,i} = gamma^(perms[k][i] + 1)
///   alpha_{k,n_{k,i}} = alphas[k][i]
struct Plan {
  gf::Field field;
  AccessStructure acc;
  IntRates rates;
  IntRates rprime;
  SdrAssignment zstar;
  std::vector<std::vector<std::size_t>> perms;  // 0-based permutation of [0, |A_k|)
  std::vector<gf::Vector> alphas;

  std::size_t users() const noexcept { return acc.users(); }
  std::size_t nodes() const noexcept { return acc.nodes(); }
  gf::Element gamma(std::size_t k, std::size_t i) const {
    return field.gamma_pow(perms.at(k).at(i) + 1);
  }
  std::size_t tail_length(std::size_t k) const { return acc.set(k).size() - rprime[k]; }
  std::size_t pad_length(std::size_t k) const { return rprime[k] - rates[k]; }

  friend bool operator==(const Plan&, const Plan&) = default;
};

/// Throws Error describing the first violated plan invariant: shapes, region
/// membership, quotas, anchor sets, permutations, distinct evaluation points,
/// nonzero coefficients, and nonsingularity of the placement matrix.
void check_plan(const Plan& plan);

/// The u x u placement matrix, u = sum |A_k|. Rows run over (k, i); columns
/// are the solved pad tails of every user in user order followed by y.
linalg::Matrix placement_matrix(const Plan& plan);

/// V^(k): basis of the null space of B(R'_k, |A_k|, gamma) as the columns of
/// an |A_k| x R'_k matrix. R'_k == |A_k| yields the identity.
linalg::Matrix null_basis(const gf::Field& f, std::size_t set_size, std::size_t quota);

struct PermutationChoice {
  /// perm[i] = basis row placed at position i of A_k.
  std::vector<std::size_t> perm;
  /// Lexicographically first set of basis rows of full rank, ascending.
  std::vector<std::size_t> rows;
};

/// Picks the first full-rank row subset of `basis` greedily top-down and
/// maps it, in order, onto `anchor_positions`; remaining rows fill the
/// remaining positions in increasing order. Positions are 0-based indices
/// into A_k and must number basis.cols().
PermutationChoice choose_permutation(const gf::Field& f, const linalg::Matrix& basis,
                                     const std::vector<std::size_t>& anchor_positions);

/// Same, with anchors given as node ids of A_k.
PermutationChoice choose_permutation(const gf::Field& f, const AccessStructure& acc,
                                     std::size_t k, const linalg::Matrix& basis,
                                     const NodeSet& zstar_k);

/// V^(pi) = diag(zeta) C + D. C carries the basis rows at anchor nodes
/// (inside their owner's column block), D everything else, and zeta the
/// coefficients alpha_{k,n} for n in Z*_k.
struct VPiDecomposition {
  linalg::Matrix vpi;
  linalg::Matrix c;
  linalg::Matrix d;
  gf::Vector zeta;
  std::vector<std::size_t> zeta_owner;  // node -> user k with node in Z*_k
};

VPiDecomposition build_vpi(const gf::Field& f, const AccessStructure& acc,
                           const IntRates& rprime, const SdrAssignment& zstar,
                           const std::vector<std::vector<std::size_t>>& perms,
                           const std::vector<gf::Vector>& alphas,
                           const std::vector<linalg::Matrix>& bases);

/// Uses the canonical null bases.
VPiDecomposition build_vpi(const Plan& plan);

struct ZetaSearchOptions {
  std::size_t random_trials_per_node = 64;
  /// Maximum determinant evaluations during the exhaustive sweep.
  std::uint64_t sweep_limit = std::uint64_t{1} << 20;
};

/// A vector with nonzero entries making diag(zeta) C + D nonsingular. Random
/// draws from a generator seeded with `seed` first, then an odometer sweep
/// over (F \ {0})^N. Throws Error{kPlanningFailed} if both give up.
gf::Vector choose_zeta(const gf::Field& f, const VPiDecomposition& dec, std::uint64_t seed,
                       const ZetaSearchOptions& options = {});

/// Full constructive planning for an integer rate tuple in the region.
/// Throws Error{kNotInRegion}, Error{kFieldTooSmall} (p - 1 < max |A_k|), or
/// Error{kPlanningFailed}.
Plan make_plan(const gf::Field& f, const AccessStructure& acc, const IntRates& rates,
               std::uint64_t seed, const ZetaSearchOptions& options = {});

}  // namespace dmuss
