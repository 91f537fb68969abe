#pragma once

#include <cstdint>
#include <random>

#include "dmuss/gf.hpp"

namespace dmuss::detail {

// splitmix64 step; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 output is fixed by the standard; the bounded draw below is
// ours so that streams match across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  gf::Element element(const gf::Field& f) {
    return gf::Element{static_cast<std::uint32_t>(below(f.modulus()))};
  }
  gf::Element nonzero(const gf::Field& f) {
    return gf::Element{static_cast<std::uint32_t>(1 + below(f.modulus() - 1))};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dmuss::detail
