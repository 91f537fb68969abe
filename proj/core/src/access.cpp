#include "dmuss/access.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dmuss/error.hpp"

namespace dmuss {
namespace {

std::size_t validate(std::vector<NodeSet>& sets) {
  if (sets.empty()) throw Error(Errc::kInvalidInput, "access structure has no users");
  std::vector<std::size_t> all;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    auto& s = sets[k];
    if (s.empty()) {
      throw Error(Errc::kInvalidInput, "access set of user " + std::to_string(k + 1) + " is empty");
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(Errc::kInvalidInput,
                  "access set of user " + std::to_string(k + 1) + " repeats a node");
    }
    all.insert(all.end(), s.begin(), s.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.back() + 1 != all.size()) {
    throw Error(Errc::kInvalidInput, "access sets must cover nodes 1.." +
                                         std::to_string(all.size()) + " without gaps");
  }
  return all.size();
}

bool cutsets_hold(const AccessStructure& acc, const IntRates& r) {
  const std::size_t k_users = acc.users();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k_users); ++mask) {
    std::size_t sum = 0;
    for (std::size_t k = 0; k < k_users; ++k)
      if (mask >> k & 1u) sum += r[k];
    if (sum > acc.union_size(mask)) return false;
  }
  return true;
}

// Cutsets through user k only; the others are unaffected by raising R_k.
bool cutsets_through_hold(const AccessStructure& acc, const IntRates& r, std::size_t k) {
  const std::size_t k_users = acc.users();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k_users); ++mask) {
    if (!(mask >> k & 1u)) continue;
    std::size_t sum = 0;
    for (std::size_t i = 0; i < k_users; ++i)
      if (mask >> i & 1u) sum += r[i];
    if (sum > acc.union_size(mask)) return false;
  }
  return true;
}

}  // namespace

AccessStructure::AccessStructure(std::vector<NodeSet> sets)
    : sets_(std::move(sets)), nodes_(validate(sets_)) {}

AccessStructure::AccessStructure(std::vector<NodeSet> sets, std::size_t nodes)
    : AccessStructure(std::move(sets)) {
  if (nodes_ != nodes) {
    throw Error(Errc::kInvalidInput, "access sets cover " + std::to_string(nodes_) +
                                         " nodes but N = " + std::to_string(nodes));
  }
}

AccessStructure AccessStructure::from_one_based(
    const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<NodeSet> zero(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (std::size_t n : sets[k]) {
      if (n == 0) throw Error(Errc::kInvalidInput, "node labels start at 1");
      zero[k].push_back(n - 1);
    }
  }
  return AccessStructure(std::move(zero));
}

std::vector<std::vector<std::size_t>> AccessStructure::to_one_based() const {
  std::vector<std::vector<std::size_t>> out(sets_.size());
  for (std::size_t k = 0; k < sets_.size(); ++k)
    for (std::size_t n : sets_[k]) out[k].push_back(n + 1);
  return out;
}

std::size_t AccessStructure::max_set_size() const noexcept {
  std::size_t m = 0;
  for (const auto& s : sets_) m = std::max(m, s.size());
  return m;
}

bool AccessStructure::contains(std::size_t k, std::size_t node) const {
  return std::binary_search(sets_.at(k).begin(), sets_.at(k).end(), node);
}

std::optional<std::size_t> AccessStructure::position(std::size_t k, std::size_t node) const {
  const auto& s = sets_.at(k);
  auto it = std::lower_bound(s.begin(), s.end(), node);
  if (it == s.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - s.begin());
}

std::size_t AccessStructure::union_size(std::uint64_t mask) const {
  std::vector<bool> seen(nodes_, false);
  std::size_t count = 0;
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (!(mask >> k & 1u)) continue;
    for (std::size_t n : sets_[k]) {
      if (!seen[n]) {
        seen[n] = true;
        ++count;
      }
    }
  }
  return count;
}

std::size_t AccessStructure::difference_size(std::size_t k, std::size_t j) const {
  const auto& a = sets_.at(k);
  const auto& b = sets_.at(j);
  std::size_t count = 0;
  for (std::size_t n : a)
    if (!std::binary_search(b.begin(), b.end(), n)) ++count;
  return count;
}

RateTuple to_rates(const IntRates& r) {
  RateTuple out;
  out.reserve(r.size());
  for (std::size_t v : r) out.emplace_back(static_cast<std::int64_t>(v));
  return out;
}

IntRates to_int_rates(const RateTuple& r) {
  IntRates out;
  out.reserve(r.size());
  for (const Rate& v : r) {
    if (v.denominator() != 1 || v.numerator() < 0) {
      std::ostringstream os;
      os << "rate " << v << " is not a non-negative integer";
      throw Error(Errc::kInvalidInput, os.str());
    }
    out.push_back(static_cast<std::size_t>(v.numerator()));
  }
  return out;
}

std::string Constraint::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i) os << " + ";
    os << "R_" << users[i] + 1;
  }
  os << " <= " << bound;
  return os.str();
}

Rate Constraint::lhs(const RateTuple& r) const {
  Rate sum(0);
  for (std::size_t k : users) sum += r.at(k);
  return sum;
}

std::vector<Constraint> capacity_constraints(const AccessStructure& acc) {
  const std::size_t k_users = acc.users();
  if (k_users > kMaxMembershipUsers) {
    throw Error(Errc::kTooManyUsers, std::to_string(k_users) + " users exceed the limit of " +
                                         std::to_string(kMaxMembershipUsers));
  }
  std::vector<Constraint> out;
  if (k_users >= 2) {
    for (std::size_t k = 0; k < k_users; ++k) {
      Constraint c;
      c.kind = Constraint::Kind::kPairwise;
      c.users = {k};
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (std::size_t j = 0; j < k_users; ++j) {
        if (j == k) continue;
        const std::size_t d = acc.difference_size(k, j);
        if (d < best) {
          best = d;
          c.witness = j;
        }
      }
      c.bound = static_cast<std::int64_t>(best);
      out.push_back(std::move(c));
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k_users); ++mask) {
    Constraint c;
    c.kind = Constraint::Kind::kCutset;
    for (std::size_t k = 0; k < k_users; ++k)
      if (mask >> k & 1u) c.users.push_back(k);
    c.bound = static_cast<std::int64_t>(acc.union_size(mask));
    out.push_back(std::move(c));
  }
  return out;
}

MembershipReport in_capacity_region(const AccessStructure& acc, const RateTuple& r) {
  if (acc.users() > kMaxMembershipUsers) {
    throw Error(Errc::kTooManyUsers, std::to_string(acc.users()) + " users exceed the limit of " +
                                         std::to_string(kMaxMembershipUsers));
  }
  if (r.size() != acc.users()) {
    throw Error(Errc::kShapeMismatch, "rate tuple has " + std::to_string(r.size()) +
                                          " entries for " + std::to_string(acc.users()) +
                                          " users");
  }
  for (const Rate& v : r) {
    if (v < Rate(0)) throw Error(Errc::kInvalidInput, "rates must be non-negative");
  }
  MembershipReport report;
  report.pairwise_vacuous = acc.users() == 1;
  for (auto& c : capacity_constraints(acc)) {
    if (!c.holds(r)) {
      report.in_region = false;
      report.violated = std::move(c);
      break;
    }
  }
  return report;
}

std::size_t pairwise_bound(const AccessStructure& acc, std::size_t k) {
  if (acc.users() < 2) {
    throw Error(Errc::kSingleUser, "pairwise bound needs at least two users");
  }
  if (k >= acc.users()) throw Error(Errc::kInvalidInput, "user index out of range");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t j = 0; j < acc.users(); ++j)
    if (j != k) best = std::min(best, acc.difference_size(k, j));
  return best;
}

bool is_valid_rprime(const AccessStructure& acc, const IntRates& rprime) {
  if (rprime.size() != acc.users()) return false;
  std::size_t sum = 0;
  for (std::size_t v : rprime) sum += v;
  return sum == acc.nodes() && cutsets_hold(acc, rprime);
}

IntRates augment_rprime(const AccessStructure& acc, const IntRates& r) {
  const auto report = in_capacity_region(acc, to_rates(r));
  if (!report.in_region) {
    throw Error(Errc::kNotInRegion,
                "rate tuple violates " + report.violated->to_string());
  }
  IntRates rp = r;
  std::size_t sum = 0;
  for (std::size_t v : rp) sum += v;
  // The cutset function is a monotone submodular rank function, so while
  // sum(R') < N some unit increment stays feasible.
  while (sum < acc.nodes()) {
    bool grown = false;
    for (std::size_t k = 0; k < rp.size() && !grown; ++k) {
      ++rp[k];
      if (cutsets_through_hold(acc, rp, k)) {
        grown = true;
      } else {
        --rp[k];
      }
    }
    if (!grown) {
      throw Error(Errc::kPlanningFailed, "no feasible quota increment (inconsistent access structure)");
    }
    ++sum;
  }
  return rp;
}

std::vector<IntRates> enumerate_integer_region(const AccessStructure& acc) {
  if (acc.users() > 6 || acc.nodes() > 12) {
    throw Error(Errc::kTooLarge, "enumeration limited to K <= 6 and N <= 12");
  }
  const std::size_t k_users = acc.users();
  IntRates upper(k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    upper[k] = k_users >= 2 ? pairwise_bound(acc, k) : acc.set(k).size();
  }
  const auto constraints = capacity_constraints(acc);
  std::vector<IntRates> out;
  IntRates cur(k_users, 0);
  while (true) {
    const RateTuple rt = to_rates(cur);
    if (std::all_of(constraints.begin(), constraints.end(),
                    [&](const Constraint& c) { return c.holds(rt); })) {
      out.push_back(cur);
    }
    // Odometer with the last coordinate fastest gives lexicographic order.
    std::size_t i = k_users;
    while (i > 0) {
      --i;
      if (cur[i] < upper[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace dmuss
