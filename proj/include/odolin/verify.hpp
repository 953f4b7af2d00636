#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "odolin/rational.hpp"

namespace odolin {

struct Check {
  Check() = default;
  explicit Check(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::string detail;
  /// Exact values behind the inequality, for the report.
  std::vector<std::pair<std::string, Rational>> values;
};

struct VerifyResult {
  std::string name;
  std::string base;
  std::size_t horizon = 0;
  std::vector<Check> checks;

  bool passed() const;
};

/// Names: thm32, ex33, thm36, thm37, lemma45. Each runs on its canonical
/// base. Throws InvalidArgument for an unknown name.
VerifyResult verify_paper(const std::string& name, std::size_t horizon);

}  // namespace odolin
