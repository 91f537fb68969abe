#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dmuss::cli {

/// Exit codes: 0 success, 1 domain failure (outside region, failed check,
/// planning error), 2 usage or malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmuss::cli
