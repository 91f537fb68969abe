#pragma once

// Independent reference implementations used as test oracles. They share no
// code with the library beyond the field arithmetic.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "dmuss/access.hpp"
#include "dmuss/gf.hpp"
#include "dmuss/linalg.hpp"

namespace oracle {

using dmuss::gf::Element;
using dmuss::gf::Field;
using dmuss::linalg::Matrix;

inline std::uint64_t order_by_iteration(const Field& f, Element e) {
  Element x = e;
  std::uint64_t n = 1;
  while (x.value != 1) {
    x = f.mul(x, e);
    ++n;
  }
  return n;
}

inline Element cofactor_det(const Field& f, const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return f.one();
  if (n == 1) return m(0, 0);
  Element total = f.zero();
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(r - 1, cc++) = m(r, j);
      }
    }
    Element term = f.mul(m(0, c), cofactor_det(f, minor));
    total = (c % 2 == 0) ? f.add(total, term) : f.sub(total, term);
  }
  return total;
}

// Literal reading of the region: every pairwise bound and every cutset.
inline bool in_region(const std::vector<std::vector<std::size_t>>& sets,
                      const std::vector<std::int64_t>& num, std::int64_t den = 1) {
  const std::size_t k_users = sets.size();
  for (std::size_t k = 0; k < k_users && k_users > 1; ++k) {
    std::size_t best = SIZE_MAX;
    for (std::size_t j = 0; j < k_users; ++j) {
      if (j == k) continue;
      std::size_t diff = 0;
      for (auto n : sets[k])
        if (std::find(sets[j].begin(), sets[j].end(), n) == sets[j].end()) ++diff;
      best = std::min(best, diff);
    }
    if (num[k] > static_cast<std::int64_t>(best) * den) return false;
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k_users); ++mask) {
    std::set<std::size_t> u;
    std::int64_t lhs = 0;
    for (std::size_t k = 0; k < k_users; ++k) {
      if (!(mask >> k & 1U)) continue;
      u.insert(sets[k].begin(), sets[k].end());
      lhs += num[k];
    }
    if (lhs > static_cast<std::int64_t>(u.size()) * den) return false;
  }
  return true;
}

inline bool cutsets_hold(const std::vector<std::vector<std::size_t>>& sets,
                         const std::vector<std::int64_t>& r) {
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sets.size()); ++mask) {
    std::set<std::size_t> u;
    std::int64_t lhs = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (!(mask >> k & 1U)) continue;
      u.insert(sets[k].begin(), sets[k].end());
      lhs += r[k];
    }
    if (lhs > static_cast<std::int64_t>(u.size())) return false;
  }
  return true;
}

inline bool same_span(const Field& f, const Matrix& a, const Matrix& b) {
  const auto ra = dmuss::linalg::rank(f, a);
  return ra == dmuss::linalg::rank(f, b) &&
         ra == dmuss::linalg::rank(f, dmuss::linalg::concat(a, b));
}

// Random access structure over exactly n nodes.
inline dmuss::AccessStructure random_access(std::mt19937_64& rng, std::size_t k_users,
                                            std::size_t n_nodes, double density = 0.45) {
  std::vector<dmuss::NodeSet> sets(k_users);
  std::bernoulli_distribution take(density);
  for (auto& s : sets)
    for (std::size_t n = 0; n < n_nodes; ++n)
      if (take(rng)) s.push_back(n);
  std::uniform_int_distribution<std::size_t> pick_user(0, k_users - 1);
  std::uniform_int_distribution<std::size_t> pick_node(0, n_nodes - 1);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    bool covered = false;
    for (const auto& s : sets) covered = covered || std::find(s.begin(), s.end(), n) != s.end();
    if (!covered) sets[pick_user(rng)].push_back(n);
  }
  for (auto& s : sets) {
    if (s.empty()) s.push_back(pick_node(rng));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return dmuss::AccessStructure(std::move(sets));
}

inline Matrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.modulus() - 1);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Element{d(rng)};
  return m;
}

inline dmuss::gf::Vector vec(std::initializer_list<std::uint32_t> xs) {
  dmuss::gf::Vector v;
  for (auto x : xs) v.push_back(Element{x});
  return v;
}

}  // namespace oracle
