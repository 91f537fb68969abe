#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dmuss {

enum class Errc {
  kNotPrime,
  kZeroElement,
  kSingular,
  kBadShape,
  kShapeMismatch,
  kInvalidInput,
  kTooManyUsers,
  kSingleUser,
  kNotInRegion,
  kTooLarge,
  kNoSdr,
  kFieldTooSmall,
  kPlanningFailed,
  kIncompatiblePlans,
};

/// Stable machine-readable name, e.g. "NotPrime".
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dmuss
