#pragma once

#include "dmuss/codec.hpp"
#include "dmuss/planner.hpp"

/// A fixed four-user, eight-node scheme over GF(11) with gamma = 8, used by
/// the `demo` command and regression tests.
namespace dmuss::worked_example {

gf::Field field();
/// A_1 = {1,6,7,8}, A_2 = {1,3,4,7}, A_3 = {1,2,3,8}, A_4 = {2,4,5,6,7} (1-based).
AccessStructure access();
/// (1, 2, 2, 3); these already sum to N so R' = R.
IntRates rates();
/// Hand-chosen anchors {8}, {3,4}, {1,2}, {5,6,7} (1-based), exponents
/// (4,2,3,1), (3,2,1,4), (1,2,3,4), (4,5,1,2,3) and coefficients with
/// alpha_{2,3} = 7, alpha_{2,7} = 8, all others 1.
Plan plan();
/// w_1 = [1], w_2 = [2,6], w_3 = [4,0], w_4 = [3,5,7].
MessageSet messages();

}  // namespace dmuss::worked_example
