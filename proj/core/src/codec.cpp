#include "dmuss/codec.hpp"

#include <numeric>
#include <string>

#include "dmuss/error.hpp"
#include "rng.hpp"

namespace dmuss {

using linalg::Matrix;

namespace {

void check_lengths(const Plan& plan, const MessageSet& msgs,
                   const std::vector<gf::Vector>& random_pads) {
  if (msgs.size() != plan.users() || random_pads.size() != plan.users()) {
    throw Error(Errc::kShapeMismatch, "need one message and one pad vector per user");
  }
  for (std::size_t k = 0; k < plan.users(); ++k) {
    if (msgs[k].size() != plan.rates[k]) {
      throw Error(Errc::kShapeMismatch, "message of user " + std::to_string(k + 1) + " has " +
                                            std::to_string(msgs[k].size()) + " symbols, expected " +
                                            std::to_string(plan.rates[k]));
    }
    if (random_pads[k].size() != plan.pad_length(k)) {
      throw Error(Errc::kShapeMismatch, "pad length mismatch for user " + std::to_string(k + 1));
    }
  }
}

}  // namespace

PlacementSystem assemble_system(const Plan& plan, const MessageSet& msgs,
                                const std::vector<gf::Vector>& random_pads) {
  check_lengths(plan, msgs, random_pads);
  const auto& f = plan.field;
  PlacementSystem sys;
  sys.a = placement_matrix(plan);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    sys.tail_offsets.push_back(offset);
    offset += plan.tail_length(k);
  }
  sys.share_offset = offset;

  for (std::size_t k = 0; k < plan.users(); ++k) {
    for (std::size_t i = 0; i < plan.acc.set(k).size(); ++i) {
      const gf::Element g = plan.gamma(k, i);
      gf::Element acc = f.zero();
      gf::Element power = f.one();
      for (std::size_t r = 0; r < plan.rprime[k]; ++r) {
        const gf::Element c = r < plan.rates[k] ? msgs[k][r] : random_pads[k][r - plan.rates[k]];
        acc = f.add(acc, f.mul(c, power));
        power = f.mul(power, g);
      }
      sys.s.push_back(f.neg(acc));
    }
  }
  return sys;
}

Encoding encode_with_pads(const Plan& plan, const MessageSet& msgs,
                          const std::vector<gf::Vector>& random_pads) {
  const PlacementSystem sys = assemble_system(plan, msgs, random_pads);
  Encoding out;
  out.b = linalg::solve(plan.field, sys.a, sys.s);
  out.y.assign(out.b.begin() + static_cast<std::ptrdiff_t>(sys.share_offset), out.b.end());
  out.pads.random = random_pads;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    auto first = out.b.begin() + static_cast<std::ptrdiff_t>(sys.tail_offsets[k]);
    out.pads.tail.emplace_back(first, first + static_cast<std::ptrdiff_t>(plan.tail_length(k)));
  }
  return out;
}

Encoding encode(const Plan& plan, const MessageSet& msgs, std::uint64_t seed) {
  return encode_with_pads(plan, msgs, random_pads(plan, seed));
}

MessageSet random_messages(const Plan& plan, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 1));
  MessageSet msgs;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    gf::Vector w(plan.rates[k]);
    for (auto& e : w) e = rng.element(plan.field);
    msgs.push_back(std::move(w));
  }
  return msgs;
}

std::vector<gf::Vector> random_pads(const Plan& plan, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 2));
  std::vector<gf::Vector> pads;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    gf::Vector o(plan.pad_length(k));
    for (auto& e : o) e = rng.element(plan.field);
    pads.push_back(std::move(o));
  }
  return pads;
}

Decoded decode(const Plan& plan, std::size_t k, std::span<const gf::Element> shares) {
  const auto& f = plan.field;
  const std::size_t sz = plan.acc.set(k).size();
  if (shares.size() != sz) {
    throw Error(Errc::kShapeMismatch, "user " + std::to_string(k + 1) + " reads " +
                                          std::to_string(sz) + " shares, got " +
                                          std::to_string(shares.size()));
  }
  Matrix v(sz, sz);
  gf::Vector rhs(sz);
  for (std::size_t i = 0; i < sz; ++i) {
    const gf::Element g = plan.gamma(k, i);
    gf::Element power = f.one();
    for (std::size_t c = 0; c < sz; ++c) {
      v(i, c) = power;
      power = f.mul(power, g);
    }
    rhs[i] = f.neg(f.mul(plan.alphas[k][i], shares[i]));
  }
  const gf::Vector coeffs = linalg::solve(f, v, rhs);
  const auto split = coeffs.begin() + static_cast<std::ptrdiff_t>(plan.rates[k]);
  return Decoded{gf::Vector(coeffs.begin(), split), gf::Vector(split, coeffs.end())};
}

gf::Vector restrict_to(const AccessStructure& acc, std::size_t k,
                       std::span<const gf::Element> y) {
  if (y.size() != acc.nodes()) throw Error(Errc::kShapeMismatch, "share vector length differs from N");
  gf::Vector out;
  for (std::size_t n : acc.set(k)) out.push_back(y[n]);
  return out;
}

std::size_t TransferMap::message_offset(std::size_t k) const {
  return std::accumulate(message_lengths.begin(),
                         message_lengths.begin() + static_cast<std::ptrdiff_t>(k), std::size_t{0});
}

std::size_t TransferMap::pad_offset(std::size_t k) const {
  const std::size_t base =
      std::accumulate(message_lengths.begin(), message_lengths.end(), std::size_t{0});
  return base + std::accumulate(pad_lengths.begin(),
                                pad_lengths.begin() + static_cast<std::ptrdiff_t>(k),
                                std::size_t{0});
}

gf::Vector TransferMap::stack_input(const MessageSet& msgs,
                                    const std::vector<gf::Vector>& pads) const {
  if (msgs.size() != message_lengths.size() || pads.size() != pad_lengths.size()) {
    throw Error(Errc::kShapeMismatch, "input user count mismatch");
  }
  gf::Vector x;
  for (std::size_t k = 0; k < msgs.size(); ++k) {
    if (msgs[k].size() != message_lengths[k]) throw Error(Errc::kShapeMismatch, "message length mismatch");
    x.insert(x.end(), msgs[k].begin(), msgs[k].end());
  }
  for (std::size_t k = 0; k < pads.size(); ++k) {
    if (pads[k].size() != pad_lengths[k]) throw Error(Errc::kShapeMismatch, "pad length mismatch");
    x.insert(x.end(), pads[k].begin(), pads[k].end());
  }
  return x;
}

TransferMap TransferMap::from_matrix(const gf::Field& field, Matrix t, std::vector<std::size_t> message_lengths,
                                     std::vector<std::size_t> pad_lengths) {
  if (message_lengths.size() != pad_lengths.size()) {
    throw Error(Errc::kShapeMismatch, "message and pad layouts must list the same users");
  }
  const std::size_t total =
      std::accumulate(message_lengths.begin(), message_lengths.end(), std::size_t{0}) +
      std::accumulate(pad_lengths.begin(), pad_lengths.end(), std::size_t{0});
  if (total != t.cols()) throw Error(Errc::kShapeMismatch, "input layout does not match T's columns");
  return TransferMap{field, std::move(t), std::move(message_lengths), std::move(pad_lengths)};
}

TransferMap transfer_map(const Plan& plan) {
  std::vector<std::size_t> mlen(plan.rates.begin(), plan.rates.end());
  std::vector<std::size_t> plen;
  for (std::size_t k = 0; k < plan.users(); ++k) plen.push_back(plan.pad_length(k));
  const std::size_t inputs = std::accumulate(mlen.begin(), mlen.end(), std::size_t{0}) +
                             std::accumulate(plen.begin(), plen.end(), std::size_t{0});

  MessageSet msgs;
  std::vector<gf::Vector> pads;
  for (std::size_t k = 0; k < plan.users(); ++k) {
    msgs.emplace_back(mlen[k]);
    pads.emplace_back(plen[k]);
  }
  // Factor once; each basis input is one more right-hand side.
  const Matrix a = placement_matrix(plan);
  const std::size_t u = a.rows();
  const Matrix inv = [&] {
    Matrix aug = linalg::concat(a, Matrix::identity(u));
    linalg::Echelon e = linalg::rref(plan.field, aug);
    if (e.pivot_columns.size() < u || e.pivot_columns[u - 1] >= u) {
      throw Error(Errc::kSingular, "placement matrix is singular");
    }
    Matrix out(u, u);
    for (std::size_t r = 0; r < u; ++r)
      for (std::size_t c = 0; c < u; ++c) out(r, c) = e.reduced(r, u + c);
    return out;
  }();
  const std::size_t share_offset = u - plan.nodes();

  Matrix t(plan.nodes(), inputs);
  std::size_t col = 0;
  auto emit = [&](std::size_t k, std::size_t r, bool is_pad) {
    if (is_pad) pads[k][r] = plan.field.one(); else msgs[k][r] = plan.field.one();
    const PlacementSystem sys = assemble_system(plan, msgs, pads);
    const gf::Vector b = linalg::apply(plan.field, inv, sys.s);
    for (std::size_t n = 0; n < plan.nodes(); ++n) t(n, col) = b[share_offset + n];
    if (is_pad) pads[k][r] = plan.field.zero(); else msgs[k][r] = plan.field.zero();
    ++col;
  };
  for (std::size_t k = 0; k < plan.users(); ++k)
    for (std::size_t r = 0; r < mlen[k]; ++r) emit(k, r, false);
  for (std::size_t k = 0; k < plan.users(); ++k)
    for (std::size_t r = 0; r < plen[k]; ++r) emit(k, r, true);
  return TransferMap::from_matrix(plan.field, std::move(t), std::move(mlen), std::move(plen));
}

}  // namespace dmuss
