#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dmuss/composite.hpp"

namespace dmuss::cli {

using nlohmann::json;

/// Malformed or inconsistent input file. Maps to exit code 2.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Corners {
  IntRates first;
  IntRates second;
  std::size_t first_blocks = 0;  // weight = first_blocks / blocks
  std::size_t blocks = 1;
};

struct Instance {
  gf::Field field;
  AccessStructure acc;
  RateTuple rates;
  std::optional<std::uint64_t> seed;
  std::optional<Corners> corners;
};

/// {"p": 11, "gamma": 8?, "nodes": 8?, "access": [[1,6,7,8], ...],
///  "rates": [1, "1/2", ...], "seed": 7?,
///  "corners": {"first": [...], "second": [...], "weight": "1/2"}?}
Instance parse_instance(const json& j);

json plan_to_json(const Plan& plan);
json scheme_to_json(const CompositeScheme& scheme);
/// Validates every plan with check_plan().
CompositeScheme scheme_from_json(const json& j);

json messages_to_json(const MessageSet& msgs);
MessageSet messages_from_json(const json& j, const gf::Field& f);

/// Share file: node labels (1-based) with their stored blocks. Pads are the
/// secret per-block randomness, only written under --audit.
struct ShareFile {
  std::vector<std::size_t> nodes;  // 0-based
  NodeBlocks shares;
  std::optional<std::vector<PadSet>> pads;
};

json shares_to_json(const ShareFile& s);
ShareFile shares_from_json(const json& j, const gf::Field& f);

Rate parse_rate(const json& j);
std::string format_rate(const Rate& r);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace dmuss::cli
