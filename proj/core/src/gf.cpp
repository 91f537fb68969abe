#include "dmuss/gf.hpp"

#include <limits>
#include <string>

#include "dmuss/error.hpp"

namespace dmuss {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kNotPrime: return "NotPrime";
    case Errc::kZeroElement: return "ZeroElement";
    case Errc::kSingular: return "Singular";
    case Errc::kBadShape: return "BadShape";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kTooManyUsers: return "TooManyUsers";
    case Errc::kSingleUser: return "SingleUser";
    case Errc::kNotInRegion: return "NotInRegion";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kNoSdr: return "NoSdr";
    case Errc::kFieldTooSmall: return "FieldTooSmall";
    case Errc::kPlanningFailed: return "PlanningFailed";
    case Errc::kIncompatiblePlans: return "IncompatiblePlans";
  }
  return "Unknown";
}

namespace gf {
namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t checked_modulus(std::uint64_t p) {
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::kInvalidInput,
                "field modulus " + std::to_string(p) + " exceeds 32 bits");
  }
  if (!is_prime(p)) {
    throw Error(Errc::kNotPrime, std::to_string(p) + " is not prime");
  }
  return static_cast<std::uint32_t>(p);
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint64_t p)
    : p_(checked_modulus(p)),
      gamma_{1},
      group_prime_factors_(distinct_prime_factors(p_ - 1)) {
  for (std::uint32_t g = 1; g < p_; ++g) {
    if (is_primitive(Element{g})) {
      gamma_ = Element{g};
      return;
    }
  }
}

Field::Field(std::uint64_t p, std::uint64_t gamma)
    : p_(checked_modulus(p)),
      gamma_{0},
      group_prime_factors_(distinct_prime_factors(p_ - 1)) {
  if (gamma == 0 || gamma >= p_ || !is_primitive(Element{static_cast<std::uint32_t>(gamma)})) {
    throw Error(Errc::kInvalidInput, std::to_string(gamma) +
                                         " is not a primitive element of GF(" +
                                         std::to_string(p_) + ")");
  }
  gamma_ = Element{static_cast<std::uint32_t>(gamma)};
}

Element Field::element(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Element{static_cast<std::uint32_t>(r)};
}

Element Field::add(Element a, Element b) const noexcept {
  std::uint64_t s = std::uint64_t{a.value} + b.value;
  return Element{static_cast<std::uint32_t>(s % p_)};
}

Element Field::sub(Element a, Element b) const noexcept {
  std::uint64_t s = std::uint64_t{a.value} + p_ - b.value;
  return Element{static_cast<std::uint32_t>(s % p_)};
}

Element Field::neg(Element a) const noexcept {
  return Element{a.value == 0 ? 0u : p_ - a.value};
}

Element Field::mul(Element a, Element b) const noexcept {
  std::uint64_t m = std::uint64_t{a.value} * b.value;
  return Element{static_cast<std::uint32_t>(m % p_)};
}

Element Field::pow(Element base, std::uint64_t exp) const noexcept {
  Element result{1 % p_};
  Element b = base;
  while (exp != 0) {
    if (exp & 1u) result = mul(result, b);
    b = mul(b, b);
    exp >>= 1u;
  }
  return result;
}

Element Field::inv(Element a) const {
  if (a.value == 0) throw Error(Errc::kZeroElement, "inverse of zero");
  // Fermat: a^(p-2).
  return pow(a, p_ - 2);
}

bool Field::is_primitive(Element e) const {
  if (e.value == 0) throw Error(Errc::kZeroElement, "zero has no multiplicative order");
  for (std::uint64_t q : group_prime_factors_) {
    if (pow(e, (p_ - 1) / q).value == 1) return false;
  }
  return true;
}

std::uint64_t Field::order(Element e) const {
  if (e.value == 0) throw Error(Errc::kZeroElement, "zero has no multiplicative order");
  std::uint64_t ord = p_ - 1;
  for (std::uint64_t q : group_prime_factors_) {
    while (ord % q == 0 && pow(e, ord / q).value == 1) ord /= q;
  }
  return ord;
}

}  // namespace gf
}  // namespace dmuss
