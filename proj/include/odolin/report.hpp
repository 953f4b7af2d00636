#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "odolin/config.hpp"
#include "odolin/cylinder.hpp"
#include "odolin/rational.hpp"

namespace odolin {

// Every report is an object
//   {command, status, config_echo, results, rules_fired, exact, approx}
// with rationals as "p/q" strings. status is "ok", "verification-failed" or
// "not-continuous".

nlohmann::json to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

/// {"empty": true} | {"box": [null | [digits], ...]} | {"block": {lo, hi, cells}}
nlohmann::json set_to_json(const WindowSet& s);
WindowSet set_from_json(const nlohmann::json& j, const BaseSeq& base);

nlohmann::json report_family_show(const Config& c);
nlohmann::json report_classify(const Config& c);
nlohmann::json report_psi(const Config& c, std::size_t i, std::size_t j,
                          const std::optional<std::vector<std::uint64_t>>& shifts, bool brute);
/// Dispatches to the sparse-digit construction for the ex33 family.
nlohmann::json report_witness_mixing(const Config& c, const Integer& k, const Rational& eps);
nlohmann::json report_witness_transitive(const Config& c, const Rational& eps);
nlohmann::json report_witness_nonmixing(const Config& c, std::size_t l, const Rational& eps);
nlohmann::json report_verify_paper(const std::string& name, std::size_t horizon);
nlohmann::json report_operator_norms(const Config& c, std::size_t window, const Integer& k);
nlohmann::json report_operator_orbit(const Config& c, const WindowSet& s, std::uint64_t k_max);

}  // namespace odolin
