#include "dmuss/verify.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "dmuss/error.hpp"
#include "rng.hpp"

namespace dmuss {

using linalg::Matrix;

bool PrivacyReport::all_private() const noexcept {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairPrivacy& p) { return p.is_private(); });
}

bool AuditReport::all_private() const noexcept {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairAudit& p) { return p.independent; });
}

bool AuditReport::all_decodable() const noexcept {
  return std::all_of(decodable.begin(), decodable.end(), [](bool b) { return b; });
}

PrivacyReport check_privacy(const TransferMap& map, const AccessStructure& acc) {
  if (map.message_lengths.size() != acc.users() || map.t.rows() != acc.nodes()) {
    throw Error(Errc::kShapeMismatch, "transfer map does not match the access structure");
  }
  PrivacyReport report;
  for (std::size_t k = 0; k < acc.users(); ++k) {
    Matrix selector(map.message_lengths[k], map.inputs());
    const std::size_t off = map.message_offset(k);
    for (std::size_t r = 0; r < map.message_lengths[k]; ++r) selector(r, off + r) = map.field.one();
    for (std::size_t obs = 0; obs < acc.users(); ++obs) {
      if (obs == k) continue;
      const Matrix view = map.t.select_rows(acc.set(obs));
      PairPrivacy pair;
      pair.owner = k;
      pair.observer = obs;
      pair.rate = map.message_lengths[k];
      pair.base_rank = linalg::rank(map.field, view);
      pair.joint_rank = linalg::rank(map.field, linalg::stack(view, selector));
      report.pairs.push_back(pair);
    }
  }
  return report;
}

PrivacyReport check_privacy(const Plan& plan) { return check_privacy(transfer_map(plan), plan.acc); }

EntropyReport check_entropy(const TransferMap& map) {
  return EntropyReport{linalg::rank(map.field, map.t), map.t.rows()};
}

EntropyReport check_entropy(const Plan& plan) { return check_entropy(transfer_map(plan)); }

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

// Base-p digit string of `index`, least significant digit first.
void digits(std::uint64_t index, std::uint32_t p, gf::Vector& out) {
  for (auto& d : out) {
    d = gf::Element{static_cast<std::uint32_t>(index % p)};
    index /= p;
  }
}

template <typename Range>
std::uint64_t pack(const Range& values, std::uint32_t p) {
  std::uint64_t index = 0;
  for (auto it = values.rbegin(); it != values.rend(); ++it) index = index * p + it->value;
  return index;
}

}  // namespace

AuditReport brute_force_audit(const TransferMap& map, const AccessStructure& acc,
                              const AuditLimits& limits) {
  if (map.message_lengths.size() != acc.users() || map.t.rows() != acc.nodes()) {
    throw Error(Errc::kShapeMismatch, "transfer map does not match the access structure");
  }
  const std::uint32_t p = map.field.modulus();
  const std::size_t n_in = map.inputs();
  const std::uint64_t points = checked_power(p, n_in, limits.max_points);
  if (points > limits.max_points) {
    throw Error(Errc::kTooLarge, "enumeration of " + std::to_string(p) + "^" + std::to_string(n_in) +
                                     " inputs exceeds the audit limit");
  }

  std::vector<gf::Vector> ys(points);
  std::vector<gf::Vector> xs(points, gf::Vector(n_in));
  for (std::uint64_t i = 0; i < points; ++i) {
    digits(i, p, xs[i]);
    ys[i] = linalg::apply(map.field, map.t, xs[i]);
  }

  AuditReport report;
  report.points = points;
  if (map.t.rows() == n_in) {
    std::vector<bool> seen(points, false);
    report.bijective = true;
    for (const auto& y : ys) {
      const std::uint64_t idx = pack(y, p);
      if (seen[idx]) {
        report.bijective = false;
        break;
      }
      seen[idx] = true;
    }
  }

  auto view_key = [&](const gf::Vector& y, std::size_t user) {
    gf::Vector v;
    for (std::size_t n : acc.set(user)) v.push_back(y[n]);
    return pack(v, p);
  };
  auto message_key = [&](const gf::Vector& x, std::size_t user) {
    const auto first = x.begin() + static_cast<std::ptrdiff_t>(map.message_offset(user));
    return pack(gf::Vector(first, first + static_cast<std::ptrdiff_t>(map.message_lengths[user])), p);
  };

  for (std::size_t k = 0; k < acc.users(); ++k) {
    const std::uint64_t w_values = checked_power(p, map.message_lengths[k], points);
    for (std::size_t obs = 0; obs < acc.users(); ++obs) {
      if (obs == k) continue;
      std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> table;
      for (std::uint64_t i = 0; i < points; ++i) {
        auto& counts = table[view_key(ys[i], obs)];
        if (counts.empty()) counts.assign(w_values, 0);
        ++counts[message_key(xs[i], k)];
      }
      bool independent = true;
      for (const auto& [key, counts] : table) {
        if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
          independent = false;
          break;
        }
      }
      report.pairs.push_back(PairAudit{k, obs, independent});
    }
  }

  for (std::size_t k = 0; k < acc.users(); ++k) {
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    bool ok = true;
    for (std::uint64_t i = 0; i < points && ok; ++i) {
      const auto [it, fresh] = seen.try_emplace(view_key(ys[i], k), message_key(xs[i], k));
      ok = fresh || it->second == message_key(xs[i], k);
    }
    report.decodable.push_back(ok);
  }
  return report;
}

AuditReport brute_force_audit(const Plan& plan, const AuditLimits& limits) {
  const TransferMap map = transfer_map(plan);
  AuditReport report = brute_force_audit(map, plan.acc, limits);

  gf::Vector x(map.inputs());
  for (std::uint64_t i = 0; i < report.points && report.round_trip; ++i) {
    digits(i, plan.field.modulus(), x);
    MessageSet msgs;
    std::vector<gf::Vector> pads;
    for (std::size_t k = 0; k < plan.users(); ++k) {
      auto m = x.begin() + static_cast<std::ptrdiff_t>(map.message_offset(k));
      msgs.emplace_back(m, m + static_cast<std::ptrdiff_t>(map.message_lengths[k]));
      auto o = x.begin() + static_cast<std::ptrdiff_t>(map.pad_offset(k));
      pads.emplace_back(o, o + static_cast<std::ptrdiff_t>(map.pad_lengths[k]));
    }
    const Encoding e = encode_with_pads(plan, msgs, pads);
    for (std::size_t k = 0; k < plan.users(); ++k) {
      if (decode(plan, k, restrict_to(plan.acc, k, e.y)).w_hat != msgs[k]) {
        report.round_trip = false;
        break;
      }
    }
  }
  return report;
}

CorrectnessReport check_correctness(const Plan& plan, std::size_t trials, std::uint64_t seed,
                                    std::optional<std::size_t> corrupt_node) {
  if (corrupt_node && *corrupt_node >= plan.nodes()) {
    throw Error(Errc::kInvalidInput, "corrupted node index out of range");
  }
  CorrectnessReport report;
  report.trials = trials;
  std::vector<bool> failed(plan.users(), false);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = detail::mix_seed(seed, t);
    const MessageSet msgs = random_messages(plan, s);
    Encoding e = encode(plan, msgs, s);
    if (corrupt_node) e.y[*corrupt_node] = plan.field.add(e.y[*corrupt_node], plan.field.one());
    bool any = false;
    for (std::size_t k = 0; k < plan.users(); ++k) {
      if (decode(plan, k, restrict_to(plan.acc, k, e.y)).w_hat != msgs[k]) {
        failed[k] = true;
        any = true;
      }
    }
    if (any) ++report.failures;
  }
  for (std::size_t k = 0; k < plan.users(); ++k)
    if (failed[k]) report.failing_users.push_back(k);
  return report;
}

}  // namespace dmuss
