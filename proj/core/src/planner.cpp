#include "dmuss/planner.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dmuss/error.hpp"
#include "rng.hpp"

namespace dmuss {

using linalg::Matrix;

namespace {

std::vector<std::size_t> anchor_positions(const AccessStructure& acc, std::size_t k,
                                          const NodeSet& zstar_k) {
  std::vector<std::size_t> pos;
  for (std::size_t n : zstar_k) {
    auto p = acc.position(k, n);
    if (!p) {
      throw Error(Errc::kInvalidInput, "anchor node " + std::to_string(n + 1) +
                                           " is outside A_" + std::to_string(k + 1));
    }
    pos.push_back(*p);
  }
  std::sort(pos.begin(), pos.end());
  return pos;
}

bool is_permutation_of_range(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::kInvalidInput, what); }

}  // namespace

void check_plan(const Plan& plan) {
  const auto& acc = plan.acc;
  const std::size_t k_users = acc.users();
  if (plan.rates.size() != k_users || plan.rprime.size() != k_users ||
      plan.zstar.zstar.size() != k_users || plan.perms.size() != k_users ||
      plan.alphas.size() != k_users) {
    throw Error(Errc::kShapeMismatch, "plan vectors must have one entry per user");
  }
  if (plan.field.modulus() - 1 < acc.max_set_size()) {
    throw Error(Errc::kFieldTooSmall, "field too small for the largest access set");
  }
  const auto membership = in_capacity_region(acc, to_rates(plan.rates));
  if (!membership.in_region) {
    throw Error(Errc::kNotInRegion, "plan rates violate " + membership.violated->to_string());
  }
  if (!is_valid_rprime(acc, plan.rprime)) invalid("storage quotas violate a cutset or do not sum to N");
  for (std::size_t k = 0; k < k_users; ++k) {
    if (plan.rprime[k] < plan.rates[k]) invalid("storage quota below rate for user " + std::to_string(k + 1));
  }
  if (!validate_sdr(acc, plan.rprime, plan.zstar)) invalid("anchor sets are not a valid SDR");
  for (std::size_t k = 0; k < k_users; ++k) {
    const std::size_t sz = acc.set(k).size();
    if (plan.perms[k].size() != sz || !is_permutation_of_range(plan.perms[k])) {
      invalid("evaluation exponents of user " + std::to_string(k + 1) + " are not a permutation");
    }
    if (plan.alphas[k].size() != sz) {
      throw Error(Errc::kShapeMismatch, "alpha vector length mismatch for user " + std::to_string(k + 1));
    }
    std::vector<gf::Element> gammas;
    for (std::size_t i = 0; i < sz; ++i) {
      if (plan.alphas[k][i].value == 0 || plan.alphas[k][i].value >= plan.field.modulus()) {
        invalid("alpha coefficients must be nonzero field elements");
      }
      gammas.push_back(plan.gamma(k, i));
    }
    std::sort(gammas.begin(), gammas.end());
    if (std::adjacent_find(gammas.begin(), gammas.end()) != gammas.end() ||
        gammas.front().value == 0) {
      invalid("evaluation points of user " + std::to_string(k + 1) + " are not distinct and nonzero");
    }
  }
  const Matrix a = placement_matrix(plan);
  if (linalg::rank(plan.field, a) != a.rows()) {
    throw Error(Errc::kSingular, "placement matrix is singular");
  }
}

Matrix placement_matrix(const Plan& plan) {
  const auto& acc = plan.acc;
  const auto& f = plan.field;
  std::size_t u = 0;
  std::size_t tails = 0;
  for (std::size_t k = 0; k < acc.users(); ++k) {
    u += acc.set(k).size();
    tails += plan.tail_length(k);
  }
  Matrix a(u, u);
  std::size_t row = 0;
  std::size_t tail_offset = 0;
  for (std::size_t k = 0; k < acc.users(); ++k) {
    const auto& set = acc.set(k);
    for (std::size_t i = 0; i < set.size(); ++i, ++row) {
      const gf::Element g = plan.gamma(k, i);
      for (std::size_t t = 0; t < plan.tail_length(k); ++t) {
        a(row, tail_offset + t) = f.pow(g, plan.rprime[k] + t);
      }
      a(row, tails + set[i]) = plan.alphas[k][i];
    }
    tail_offset += plan.tail_length(k);
  }
  return a;
}

Matrix null_basis(const gf::Field& f, std::size_t set_size, std::size_t quota) {
  if (quota > set_size) throw Error(Errc::kBadShape, "quota exceeds access set size");
  if (quota == set_size) return Matrix::identity(set_size);
  if (quota == 0) return Matrix(set_size, 0);
  return linalg::null_space(f, linalg::build_B(f, quota, set_size)).as_columns(set_size);
}

PermutationChoice choose_permutation(const gf::Field& f, const Matrix& basis,
                                     const std::vector<std::size_t>& anchor_positions) {
  const std::size_t n = basis.rows();
  const std::size_t r = basis.cols();
  if (anchor_positions.size() != r) {
    throw Error(Errc::kShapeMismatch, "need exactly one anchor position per basis vector");
  }
  PermutationChoice out;
  linalg::RowSpace space(f, r);
  for (std::size_t i = 0; i < n && out.rows.size() < r; ++i) {
    if (space.add(basis.row(i))) out.rows.push_back(i);
  }
  if (out.rows.size() < r) throw Error(Errc::kSingular, "basis does not have full column rank");

  std::vector<std::size_t> positions = anchor_positions;
  std::sort(positions.begin(), positions.end());
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end() ||
      (!positions.empty() && positions.back() >= n)) {
    throw Error(Errc::kInvalidInput, "anchor positions must be distinct and inside the set");
  }

  out.perm.assign(n, n);
  for (std::size_t j = 0; j < r; ++j) out.perm[positions[j]] = out.rows[j];
  std::vector<bool> used(n, false);
  for (std::size_t row : out.rows) used[row] = true;
  std::size_t next_row = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (out.perm[pos] != n) continue;
    while (used[next_row]) ++next_row;
    out.perm[pos] = next_row;
    used[next_row] = true;
  }
  return out;
}

PermutationChoice choose_permutation(const gf::Field& f, const AccessStructure& acc,
                                     std::size_t k, const Matrix& basis,
                                     const NodeSet& zstar_k) {
  return choose_permutation(f, basis, anchor_positions(acc, k, zstar_k));
}

VPiDecomposition build_vpi(const gf::Field& f, const AccessStructure& acc,
                           const IntRates& rprime, const SdrAssignment& zstar,
                           const std::vector<std::vector<std::size_t>>& perms,
                           const std::vector<gf::Vector>& alphas,
                           const std::vector<Matrix>& bases) {
  const std::size_t n_nodes = acc.nodes();
  const std::size_t width = std::accumulate(rprime.begin(), rprime.end(), std::size_t{0});
  VPiDecomposition dec;
  dec.vpi = Matrix(n_nodes, width);
  dec.c = Matrix(n_nodes, width);
  dec.d = Matrix(n_nodes, width);
  dec.zeta.assign(n_nodes, gf::Element{0});
  dec.zeta_owner.assign(n_nodes, acc.users());

  for (std::size_t k = 0; k < acc.users(); ++k) {
    for (std::size_t n : zstar.zstar.at(k)) dec.zeta_owner.at(n) = k;
  }

  std::size_t col = 0;
  for (std::size_t k = 0; k < acc.users(); ++k) {
    const auto& set = acc.set(k);
    const Matrix& basis = bases.at(k);
    if (basis.rows() != set.size() || basis.cols() != rprime[k]) {
      throw Error(Errc::kShapeMismatch, "basis shape mismatch for user " + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      const std::size_t node = set[i];
      const std::size_t brow = perms.at(k).at(i);
      const gf::Element alpha = alphas.at(k).at(i);
      const bool anchor = dec.zeta_owner[node] == k;
      if (anchor) dec.zeta[node] = alpha;
      for (std::size_t c = 0; c < rprime[k]; ++c) {
        const gf::Element v = basis(brow, c);
        dec.vpi(node, col + c) = f.mul(alpha, v);
        if (anchor) {
          dec.c(node, col + c) = v;
        } else {
          dec.d(node, col + c) = f.mul(alpha, v);
        }
      }
    }
    col += rprime[k];
  }
  return dec;
}

VPiDecomposition build_vpi(const Plan& plan) {
  std::vector<Matrix> bases;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    bases.push_back(null_basis(plan.field, plan.acc.set(k).size(), plan.rprime[k]));
  }
  return build_vpi(plan.field, plan.acc, plan.rprime, plan.zstar, plan.perms, plan.alphas, bases);
}

gf::Vector choose_zeta(const gf::Field& f, const VPiDecomposition& dec, std::uint64_t seed,
                       const ZetaSearchOptions& options) {
  const std::size_t n = dec.c.rows();
  if (!dec.c.square() || dec.d.rows() != n || dec.d.cols() != n) {
    throw Error(Errc::kShapeMismatch, "decomposition must be square");
  }
  auto nonsingular = [&](const gf::Vector& zeta) {
    Matrix v = linalg::add(f, linalg::scale_rows(f, zeta, dec.c), dec.d);
    return linalg::det(f, v).value != 0;
  };

  detail::Rng rng(seed);
  gf::Vector zeta(n);
  const std::size_t trials = options.random_trials_per_node * std::max<std::size_t>(n, 1);
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& z : zeta) z = rng.nonzero(f);
    if (nonsingular(zeta)) return zeta;
  }

  // Exhaustive fallback: det is multilinear in zeta with leading coefficient
  // det(C) != 0, so for p >= 3 some point of (F \ {0})^N works.
  std::fill(zeta.begin(), zeta.end(), gf::Element{1});
  for (std::uint64_t step = 0; step < options.sweep_limit; ++step) {
    if (nonsingular(zeta)) return zeta;
    std::size_t i = 0;
    while (i < n) {
      if (zeta[i].value + 1 < f.modulus()) {
        ++zeta[i].value;
        break;
      }
      zeta[i] = gf::Element{1};
      ++i;
    }
    if (i == n) break;  // wrapped: grid exhausted
  }
  throw Error(Errc::kPlanningFailed, "no nonsingular zeta found within the search budget");
}

Plan make_plan(const gf::Field& f, const AccessStructure& acc, const IntRates& rates,
               std::uint64_t seed, const ZetaSearchOptions& options) {
  const auto membership = in_capacity_region(acc, to_rates(rates));
  if (!membership.in_region) {
    throw Error(Errc::kNotInRegion, "rate tuple violates " + membership.violated->to_string());
  }
  if (f.modulus() - 1 < acc.max_set_size()) {
    throw Error(Errc::kFieldTooSmall,
                "GF(" + std::to_string(f.modulus()) + ") has fewer than " +
                    std::to_string(acc.max_set_size()) + " nonzero evaluation points");
  }

  Plan plan{f, acc, rates, augment_rprime(acc, rates), {}, {}, {}};
  plan.zstar = find_sdr(acc, plan.rprime);

  std::vector<Matrix> bases;
  for (std::size_t k = 0; k < acc.users(); ++k) {
    const std::size_t sz = acc.set(k).size();
    bases.push_back(null_basis(f, sz, plan.rprime[k]));
    plan.perms.push_back(
        choose_permutation(f, acc, k, bases.back(), plan.zstar.zstar[k]).perm);
    plan.alphas.emplace_back(sz, f.one());
  }

  const VPiDecomposition dec =
      build_vpi(f, acc, plan.rprime, plan.zstar, plan.perms, plan.alphas, bases);
  const gf::Vector zeta = choose_zeta(f, dec, seed, options);
  for (std::size_t node = 0; node < acc.nodes(); ++node) {
    const std::size_t k = dec.zeta_owner[node];
    plan.alphas[k][*acc.position(k, node)] = zeta[node];
  }

  const Matrix a = placement_matrix(plan);
  if (linalg::rank(f, a) != a.rows()) {
    throw Error(Errc::kPlanningFailed, "placement matrix singular after coefficient search");
  }
  return plan;
}

}  // namespace dmuss
