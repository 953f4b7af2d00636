#include "odolin/config.hpp"

#include <set>

#include "odolin/error.hpp"
#include "odolin/shift_disjoint.hpp"

namespace odolin {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Config, where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(where + "." + key, "unknown field");
}

std::uint64_t get_uint(const json& v, const std::string& where, std::uint64_t min = 0) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0))
    fail(where, "expected a non-negative integer");
  std::uint64_t out = v.get<std::uint64_t>();
  if (out < min) fail(where, "must be >= " + std::to_string(min));
  return out;
}

Rational get_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (!v.is_string()) fail(where, "expected an exact rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::vector<std::uint64_t> get_uint_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of integers");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_uint(v[i], where + "[" + std::to_string(i) + "]", 2));
  return out;
}

}  // namespace

json base_to_json(const BaseSeq& base) {
  switch (base.rule()) {
    case BaseSeq::Rule::Constant:
      return {{"kind", "constant"}, {"value", base.prefix().front()}};
    case BaseSeq::Rule::Periodic:
      return {{"kind", "list"}, {"values", base.prefix()}, {"period", base.period()}};
    case BaseSeq::Rule::Power:
      return {{"kind", "power"}, {"offset", base.offset()}};
  }
  return {};
}

BaseSeq base_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(where + ".kind", "expected \"constant\", \"list\" or \"power\"");
  const std::string kind = j["kind"];
  try {
    if (kind == "constant") {
      only_keys(j, where, {"kind", "value"});
      if (!j.contains("value")) fail(where + ".value", "missing");
      return BaseSeq::constant(get_uint(j["value"], where + ".value", 2));
    }
    if (kind == "list") {
      only_keys(j, where, {"kind", "values", "period"});
      if (!j.contains("values")) fail(where + ".values", "missing");
      std::vector<std::uint64_t> values = get_uint_list(j["values"], where + ".values");
      std::vector<std::uint64_t> period;
      if (j.contains("period")) period = get_uint_list(j["period"], where + ".period");
      return BaseSeq::periodic(std::move(values), std::move(period));
    }
    if (kind == "power") {
      only_keys(j, where, {"kind", "offset"});
      std::uint64_t offset = j.contains("offset") ? get_uint(j["offset"], where + ".offset", 1) : 1;
      if (offset > 62) fail(where + ".offset", "must be <= 62");
      return BaseSeq::power(static_cast<int>(offset));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    fail(where, e.what());
  }
  fail(where + ".kind", "unknown base kind \"" + kind + "\"");
}

namespace {

MeasureFamily family_from_json(const json& m, const BaseSeq& base) {
  const std::string where = "measure";
  only_keys(m, where, {"family", "masses", "tail", "declarations"});
  if (!m.contains("family") || !m["family"].is_string()) fail(where + ".family", "missing");
  const std::string name = m["family"];
  FamilyKind kind;
  try {
    kind = parse_family_kind(name);
  } catch (const Error&) {
    fail(where + ".family", "unknown family \"" + name + "\"");
  }
  if (kind != FamilyKind::Custom)
    for (const char* key : {"masses", "tail", "declarations"})
      if (m.contains(key)) fail(where + "." + key, "only allowed for the custom family");
  try {
    switch (kind) {
      case FamilyKind::Uniform: return MeasureFamily::uniform(base);
      case FamilyKind::Thm32: return MeasureFamily::thm32(base);
      case FamilyKind::Ex33: return MeasureFamily::ex33(base);
      case FamilyKind::Thm36: return MeasureFamily::thm36(base);
      case FamilyKind::Thm37: return MeasureFamily::thm37(base);
      case FamilyKind::Custom: break;
    }
  } catch (const Error& e) {
    fail(where + ".family", e.what());
  }

  std::vector<std::vector<Rational>> masses;
  if (m.contains("masses")) {
    const json& rows = m["masses"];
    if (!rows.is_array()) fail(where + ".masses", "expected an array of arrays");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string at = where + ".masses[" + std::to_string(i) + "]";
      if (!rows[i].is_array()) fail(at, "expected an array of \"p/q\" strings");
      std::vector<Rational> row;
      for (std::size_t d = 0; d < rows[i].size(); ++d)
        row.push_back(get_rational(rows[i][d], at + "[" + std::to_string(d) + "]"));
      masses.push_back(std::move(row));
    }
  }
  auto tail = MeasureFamily::CustomTail::Uniform;
  if (m.contains("tail")) {
    if (m["tail"] == "repeat")
      tail = MeasureFamily::CustomTail::Repeat;
    else if (m["tail"] != "uniform")
      fail(where + ".tail", "expected \"uniform\" or \"repeat\"");
  }
  std::vector<Declaration> decls;
  if (m.contains("declarations")) {
    const json& ds = m["declarations"];
    if (!ds.is_array()) fail(where + ".declarations", "expected an array");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::string at = where + ".declarations[" + std::to_string(i) + "]";
      only_keys(ds[i], at, {"fact", "value", "justification"});
      if (!ds[i].contains("fact") || !ds[i]["fact"].is_string()) fail(at + ".fact", "missing");
      Declaration d{};
      try {
        d.fact = parse_fact(ds[i]["fact"]);
      } catch (const Error&) {
        fail(at + ".fact", "unknown fact \"" + ds[i]["fact"].get<std::string>() + "\"");
      }
      d.value = ds[i].contains("value") ? get_rational(ds[i]["value"], at + ".value") : Rational(1);
      if (ds[i].contains("justification")) {
        if (!ds[i]["justification"].is_string()) fail(at + ".justification", "expected a string");
        d.justification = ds[i]["justification"];
      }
      decls.push_back(std::move(d));
    }
  }
  try {
    return MeasureFamily::custom(base, std::move(masses), tail, std::move(decls));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace

Config parse_config(const json& doc) {
  only_keys(doc, "config",
            {"base", "measure", "horizon", "size_cap", "p", "format", "thresholds",
             "window_budget", "search_horizon"});
  Config c;
  c.echo = doc;
  if (!doc.contains("base")) fail("base", "missing");
  BaseSeq base = base_from_json(doc["base"]);
  if (!doc.contains("measure")) fail("measure", "missing");
  c.family = std::make_shared<const MeasureFamily>(family_from_json(doc["measure"], base));

  if (doc.contains("horizon")) c.horizon = get_uint(doc["horizon"], "horizon", 1);
  c.size_cap = doc.contains("size_cap") ? get_uint(doc["size_cap"], "size_cap", 1)
                                        : default_size_cap();
  c.thresholds.psi_cap = c.size_cap;
  if (doc.contains("p")) {
    c.p = get_rational(doc["p"], "p");
    if (c.p < 1) fail("p", "must be >= 1");
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string()) fail("format", "expected a string");
    c.format = doc["format"];
    if (c.format != "text" && c.format != "json" && c.format != "csv")
      fail("format", "expected text, json or csv");
  }
  if (doc.contains("window_budget"))
    c.window_budget = get_uint(doc["window_budget"], "window_budget", 1);
  if (doc.contains("search_horizon"))
    c.search_horizon = get_uint(doc["search_horizon"], "search_horizon", 1);
  if (doc.contains("thresholds")) {
    const json& t = doc["thresholds"];
    only_keys(t, "thresholds", {"eta_gap", "psi_gap", "psi_cap", "range_cap", "range_span"});
    if (t.contains("eta_gap")) c.thresholds.eta_gap = get_rational(t["eta_gap"], "thresholds.eta_gap");
    if (t.contains("psi_gap")) c.thresholds.psi_gap = get_rational(t["psi_gap"], "thresholds.psi_gap");
    if (t.contains("psi_cap")) c.thresholds.psi_cap = get_uint(t["psi_cap"], "thresholds.psi_cap");
    if (t.contains("range_cap"))
      c.thresholds.range_cap = get_uint(t["range_cap"], "thresholds.range_cap");
    if (t.contains("range_span"))
      c.thresholds.range_span = get_uint(t["range_span"], "thresholds.range_span");
  }
  return c;
}

Config parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("config syntax: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace odolin
