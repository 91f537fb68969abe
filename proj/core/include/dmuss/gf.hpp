#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace dmuss::gf {

/// A symbol of GF(p). Only meaningful together with the Field that made it.
struct Element {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
  friend std::ostream& operator<<(std::ostream& os, Element e) {
    return os << e.value;
  }
};

using Vector = std::vector<Element>;

/// Prime field GF(p) together with a designated primitive element.
///
/// Arithmetic widens to 64 bits and reduces once per operation, so any
/// prime below 2^32 is supported. Instances are immutable.
class Field {
 public:
  /// Field with the smallest generator of GF(p)^* as primitive element.
  /// Throws Error{kNotPrime} if p is not prime.
  explicit Field(std::uint64_t p);

  /// Field with an explicitly chosen primitive element. Throws
  /// Error{kInvalidInput} if `gamma` does not generate GF(p)^*.
  Field(std::uint64_t p, std::uint64_t gamma);

  std::uint32_t modulus() const noexcept { return p_; }
  Element gamma() const noexcept { return gamma_; }

  /// Reduces any integer (negative values included) into [0, p).
  Element element(std::int64_t v) const noexcept;

  Element zero() const noexcept { return Element{0}; }
  Element one() const noexcept { return Element{1}; }

  Element add(Element a, Element b) const noexcept;
  Element sub(Element a, Element b) const noexcept;
  Element neg(Element a) const noexcept;
  Element mul(Element a, Element b) const noexcept;
  Element pow(Element base, std::uint64_t exp) const noexcept;
  /// Throws Error{kZeroElement} for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// gamma^exp.
  Element gamma_pow(std::uint64_t exp) const noexcept { return pow(gamma_, exp); }

  /// True iff the multiplicative order of `e` is p - 1.
  /// Throws Error{kZeroElement} for e == 0.
  bool is_primitive(Element e) const;

  /// Multiplicative order of a nonzero element. Throws for e == 0.
  std::uint64_t order(Element e) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.gamma_ == b.gamma_;
  }

 private:
  std::uint32_t p_;
  Element gamma_;
  std::vector<std::uint64_t> group_prime_factors_;  // distinct primes of p-1
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace dmuss::gf
