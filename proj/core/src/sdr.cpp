#include "dmuss/sdr.hpp"

#include <algorithm>
#include <limits>

namespace dmuss {
namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct Clone {
  std::size_t user;
  std::size_t copy;
};

class Matcher {
 public:
  Matcher(const AccessStructure& acc, std::vector<Clone> clones)
      : acc_(acc),
        clones_(std::move(clones)),
        node_mate_(acc.nodes(), kUnmatched),
        clone_mate_(clones_.size(), kUnmatched) {}

  // Returns false and leaves the visited marks describing the failed search.
  bool augment(std::size_t root) {
    visited_node_.assign(acc_.nodes(), false);
    visited_clone_.assign(clones_.size(), false);
    return try_clone(root);
  }

  DeficientSet certificate() const {
    DeficientSet d;
    for (std::size_t c = 0; c < clones_.size(); ++c)
      if (visited_clone_[c]) d.clones.emplace_back(clones_[c].user, clones_[c].copy);
    for (std::size_t n = 0; n < acc_.nodes(); ++n)
      if (visited_node_[n]) d.neighborhood.push_back(n);
    return d;
  }

  const std::vector<std::size_t>& clone_mate() const { return clone_mate_; }

 private:
  bool try_clone(std::size_t c) {
    visited_clone_[c] = true;
    const NodeSet& nbrs = acc_.set(clones_[c].user);
    for (std::size_t n : nbrs) {
      if (node_mate_[n] == kUnmatched) {
        link(c, n);
        return true;
      }
    }
    for (std::size_t n : nbrs) {
      if (visited_node_[n]) continue;
      visited_node_[n] = true;
      if (try_clone(node_mate_[n])) {
        link(c, n);
        return true;
      }
    }
    return false;
  }

  void link(std::size_t c, std::size_t n) {
    node_mate_[n] = c;
    clone_mate_[c] = n;
  }

  const AccessStructure& acc_;
  std::vector<Clone> clones_;
  std::vector<std::size_t> node_mate_;
  std::vector<std::size_t> clone_mate_;
  std::vector<bool> visited_node_;
  std::vector<bool> visited_clone_;
};

}  // namespace

std::vector<std::size_t> DeficientSet::users() const {
  std::vector<std::size_t> u;
  for (const auto& [k, j] : clones) u.push_back(k);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

SdrAssignment find_sdr(const AccessStructure& acc, const IntRates& rprime) {
  if (rprime.size() != acc.users()) {
    throw Error(Errc::kShapeMismatch, "quota vector length differs from user count");
  }
  std::vector<Clone> clones;
  for (std::size_t k = 0; k < acc.users(); ++k)
    for (std::size_t j = 0; j < rprime[k]; ++j) clones.push_back({k, j});

  Matcher m(acc, clones);
  for (std::size_t c = 0; c < clones.size(); ++c) {
    if (!m.augment(c)) {
      DeficientSet cert = m.certificate();
      throw NoSdrError("Hall condition fails: " + std::to_string(cert.clones.size()) +
                           " clones share " + std::to_string(cert.neighborhood.size()) +
                           " nodes",
                       std::move(cert));
    }
  }

  SdrAssignment out;
  out.zstar.resize(acc.users());
  for (std::size_t c = 0; c < clones.size(); ++c) {
    out.zstar[clones[c].user].push_back(m.clone_mate()[c]);
  }
  for (auto& z : out.zstar) std::sort(z.begin(), z.end());
  return out;
}

bool validate_sdr(const AccessStructure& acc, const IntRates& rprime, const SdrAssignment& a) {
  if (rprime.size() != acc.users() || a.zstar.size() != acc.users()) return false;
  std::vector<bool> used(acc.nodes(), false);
  for (std::size_t k = 0; k < acc.users(); ++k) {
    NodeSet z = a.zstar[k];
    std::sort(z.begin(), z.end());
    if (std::adjacent_find(z.begin(), z.end()) != z.end()) return false;
    if (z.size() != rprime[k]) return false;
    for (std::size_t n : z) {
      if (n >= acc.nodes() || !acc.contains(k, n) || used[n]) return false;
      used[n] = true;
    }
  }
  return true;
}

}  // namespace dmuss
