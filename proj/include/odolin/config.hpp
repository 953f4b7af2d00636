#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "odolin/classifier.hpp"
#include "odolin/measures.hpp"
#include "odolin/rational.hpp"

namespace odolin {

/// Parsed configuration document:
///   {"base": {"kind": "constant", "value": 2},
///    "measure": {"family": "thm32"},
///    "horizon": 20, "size_cap": 16384, "p": "2", "format": "json"}
/// Custom families list masses as "p/q" strings per coordinate.
struct Config {
  nlohmann::json echo;
  std::shared_ptr<const MeasureFamily> family;
  std::size_t horizon = 20;
  std::uint64_t size_cap = 0;
  Rational p = 1;
  std::string format = "text";
  Thresholds thresholds;
  std::size_t window_budget = 8;
  std::size_t search_horizon = 64;
};

/// Throws Error(Config) with the offending field path in the message.
Config parse_config(const nlohmann::json& doc);
/// Same from text; syntax errors report line and column.
Config parse_config_text(std::string_view text);

nlohmann::json base_to_json(const BaseSeq& base);
BaseSeq base_from_json(const nlohmann::json& j, const std::string& where = "base");

}  // namespace odolin
