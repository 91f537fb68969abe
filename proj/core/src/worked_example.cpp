#include "dmuss/worked_example.hpp"

namespace dmuss::worked_example {

gf::Field field() { return gf::Field(11, 8); }

AccessStructure access() {
  return AccessStructure::from_one_based({{1, 6, 7, 8}, {1, 3, 4, 7}, {1, 2, 3, 8}, {2, 4, 5, 6, 7}});
}

IntRates rates() { return {1, 2, 2, 3}; }

Plan plan() {
  const gf::Field f = field();
  const AccessStructure acc = access();
  auto e = [](std::uint32_t v) { return gf::Element{v}; };
  Plan p{f,
         acc,
         rates(),
         rates(),
         SdrAssignment{{{7}, {2, 3}, {0, 1}, {4, 5, 6}}},
         {{3, 1, 2, 0}, {2, 1, 0, 3}, {0, 1, 2, 3}, {3, 4, 0, 1, 2}},
         {}};
  p.alphas = {
      {e(1), e(1), e(1), e(1)},
      {e(1), e(7), e(1), e(8)},  // nodes 1, 3, 4, 7
      {e(1), e(1), e(1), e(1)},
      {e(1), e(1), e(1), e(1), e(1)},
  };
  return p;
}

MessageSet messages() {
  auto v = [](std::initializer_list<std::uint32_t> xs) {
    gf::Vector out;
    for (auto x : xs) out.push_back(gf::Element{x});
    return out;
  };
  return {v({1}), v({2, 6}), v({4, 0}), v({3, 5, 7})};
}

}  // namespace dmuss::worked_example
