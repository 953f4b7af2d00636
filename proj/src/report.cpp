#include "odolin/report.hpp"

#include "odolin/classifier.hpp"
#include "odolin/error.hpp"
#include "odolin/operator_window.hpp"
#include "odolin/shift_disjoint.hpp"
#include "odolin/verify.hpp"
#include "odolin/witness.hpp"

namespace odolin {

using nlohmann::json;

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw Error(ErrorCode::Config, "expected a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

namespace {

using Exact = std::vector<std::pair<std::string, Rational>>;

json envelope(const std::string& command, const json& echo, json results, json rules,
              const Exact& exact, const std::string& status = "ok") {
  json ex = json::object(), ap = json::object();
  for (const auto& [key, value] : exact) {
    ex[key] = to_json(value);
    ap[key] = to_decimal(value);
  }
  return {{"command", command},     {"status", status},
          {"config_echo", echo},    {"results", std::move(results)},
          {"rules_fired", std::move(rules)}, {"exact", ex},
          {"approx", ap}};
}

json opt(const std::optional<Rational>& q) { return q ? to_json(*q) : json(nullptr); }

json declarations_json(const MeasureFamily& f) {
  json out = json::array();
  for (const Declaration& d : f.declarations())
    out.push_back({{"fact", fact_name(d.fact)},
                   {"value", to_json(d.value)},
                   {"justification", d.justification},
                   {"source", d.from_construction ? "construction" : "user-assertion"}});
  return out;
}

json evidence_json(const EvidenceTable& t) {
  json rows = json::array();
  for (const EvidenceRow& r : t.rows)
    rows.push_back({{"i", r.i},
                    {"alpha", r.alpha},
                    {"eta", to_json(r.eta)},
                    {"delta", to_json(r.delta)},
                    {"one_minus_eta_over_alpha", to_json(r.one_minus_eta_over_alpha)},
                    {"rho", to_json(r.rho)},
                    {"lambda0", to_json(r.lambda0)},
                    {"diamond_running", opt(r.diamond_running)},
                    {"psi", opt(r.psi)},
                    {"psi_k", r.psi ? json(r.psi_k) : json(nullptr)}});
  json ranges = json::array();
  for (const PsiSample& s : t.psi_ranges)
    ranges.push_back({{"i", s.i}, {"j", s.j}, {"value", to_json(s.value)}, {"k", s.k}});
  return {{"horizon", t.horizon},
          {"rows", rows},
          {"psi_ranges", ranges},
          {"psi_omitted", t.psi_omitted}};
}

json witness_json(const WitnessReport& r) {
  json params = json::object();
  for (const auto& [key, value] : r.parameters) params[key] = value;
  return {{"construction", construction_name(r.construction)},
          {"k", r.k.get_str()},
          {"set", set_to_json(r.set)},
          {"set_measure", to_json(r.set_measure)},
          {"complement_measure", to_json(r.complement_measure)},
          {"epsilon", to_json(r.epsilon)},
          {"disjoint", r.disjoint},
          {"accepted", r.accepted},
          {"parameters", params}};
}

}  // namespace

json set_to_json(const WindowSet& s) {
  switch (s.form()) {
    case WindowSet::Form::Empty:
      return {{"empty", true}};
    case WindowSet::Form::Box: {
      json coords = json::array();
      for (const DigitSet& d : s.coords())
        coords.push_back(d.is_full() ? json(nullptr) : json(d.digits()));
      return {{"box", coords}};
    }
    case WindowSet::Form::Block:
      return {{"block", {{"lo", s.lo()}, {"hi", s.hi()}, {"cells", s.cells()}}}};
  }
  return {};
}

WindowSet set_from_json(const json& j, const BaseSeq& base) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::Config, "set: " + what); };
  if (!j.is_object() || j.size() != 1) bad("expected one of empty, box, block");
  try {
    if (j.contains("empty")) return WindowSet::empty();
    if (j.contains("box")) {
      const json& coords = j["box"];
      if (!coords.is_array() || coords.empty()) bad("box needs a nonempty array");
      std::vector<DigitSet> out;
      for (const json& c : coords) {
        if (c.is_null())
          out.push_back(DigitSet::all());
        else
          out.push_back(DigitSet::of(c.get<std::vector<std::uint64_t>>()));
      }
      for (std::size_t i = 0; i < out.size(); ++i)
        for (std::uint64_t d : out[i].digits())
          if (d >= base.alpha(i))
            bad("digit " + std::to_string(d) + " out of range at coordinate " +
                std::to_string(i));
      return WindowSet::box(std::move(out));
    }
    if (j.contains("block")) {
      const json& b = j["block"];
      return WindowSet::block(b.at("lo").get<std::size_t>(), b.at("hi").get<std::size_t>(),
                              b.at("cells").get<std::vector<std::uint64_t>>(), base);
    }
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    bad(e.what());
  }
  bad("expected one of empty, box, block");
  return WindowSet::empty();
}

json report_family_show(const Config& c) {
  const MeasureFamily& f = *c.family;
  EvidenceTable t = evidence(f, c.horizon, c.thresholds);
  DiamondResult d = f.diamond_inf(c.horizon);
  json results = evidence_json(t);
  results["base"] = base_to_json(f.base());
  results["family"] = family_kind_name(f.kind());
  results["declarations"] = declarations_json(f);
  results["diamond"] = {{"value", to_json(d.value)}, {"l", d.argmin_l}, {"j", d.argmin_j}};
  results["warnings"] = consistency_check(f, c.horizon);
  Rational nonatomic = f.nonatomic_product(c.horizon);
  results["nonatomic_product"] = to_json(nonatomic);
  return envelope("family show", c.echo, results, json::array(),
                  {{"diamond_inf", d.value},
                   {"nonatomic_product", nonatomic},
                   {"eta_L", t.rows.back().eta},
                   {"rho_L", t.rows.back().rho}});
}

json report_classify(const Config& c) {
  const MeasureFamily& f = *c.family;
  Verdict v = classify(f, c.horizon, c.thresholds);
  json rules = json::array();
  for (const RuleFired& r : v.rules)
    rules.push_back({{"rule", r.id},
                     {"condition", r.condition},
                     {"inputs", r.inputs},
                     {"conclusion", r.conclusion}});
  json results = {{"mixing", status_name(v.mixing)},
                  {"transitive", status_name(v.transitive)},
                  {"continuous", v.continuous},
                  {"continuity_basis", v.continuity_basis},
                  {"notes", v.notes},
                  {"warnings", consistency_check(f, c.horizon)},
                  {"family", family_kind_name(f.kind())},
                  {"base", base_to_json(f.base())},
                  {"evidence", evidence_json(v.evidence)}};
  const EvidenceRow& last = v.evidence.rows.back();
  return envelope("classify", c.echo, results, rules, {{"eta_L", last.eta}, {"rho_L", last.rho}},
                  v.continuous ? "ok" : "not-continuous");
}

json report_psi(const Config& c, std::size_t i, std::size_t j,
                const std::optional<std::vector<std::uint64_t>>& shifts, bool brute) {
  if (j < i) throw Error(ErrorCode::InvalidArgument, "need i <= j");
  const MeasureFamily& f = *c.family;
  ShiftSolution s = brute ? brute_force_psi(f, i, j) : psi_range(f, i, j, shifts, c.size_cap);
  Integer n = f.base().range_product(i, j);
  json results = {{"i", i},
                  {"j", j},
                  {"N", n.get_str()},
                  {"method", brute ? "brute-force" : "cycle-dp"},
                  {"value", to_json(s.value)},
                  {"k", s.k},
                  {"global_shift", Integer(Integer(std::to_string(s.k)) * f.base().beta(i)).get_str()},
                  {"witness", s.witness}};
  return envelope("psi", c.echo, results, json::array(), {{"psi", s.value}});
}

json report_witness_mixing(const Config& c, const Integer& k, const Rational& eps) {
  const MeasureFamily& f = *c.family;
  WitnessReport r = f.kind() == FamilyKind::Ex33 ? ex33_witness(f, k, eps, c.search_horizon)
                                                 : mixing_witness(f, k, eps, c.search_horizon);
  return envelope("witness mixing", c.echo, witness_json(r), json::array(),
                  {{"set_measure", r.set_measure}, {"complement_measure", r.complement_measure},
                   {"epsilon", eps}},
                  r.accepted ? "ok" : "verification-failed");
}

json report_witness_transitive(const Config& c, const Rational& eps) {
  WitnessReport r = transitive_witness(*c.family, eps, c.window_budget, c.size_cap);
  json results = witness_json(r);
  // the complement U of B: mu(U) < eps and f^k(U) covers B
  WindowSet u = complement(r.set, c.family->base());
  Rational cover = shifted_intersection_measure(u, r.set, r.k, *c.family);
  results["complement_image_in_set"] = to_json(cover);
  return envelope("witness transitive", c.echo, results, json::array(),
                  {{"set_measure", r.set_measure}, {"complement_measure", r.complement_measure},
                   {"epsilon", eps}},
                  r.accepted ? "ok" : "verification-failed");
}

json report_witness_nonmixing(const Config& c, std::size_t l, const Rational& eps) {
  ProbeReport p = nonmixing_probe(*c.family, l, eps, c.window_budget, c.size_cap);
  json rows = json::array();
  for (const ProbeRow& r : p.rows)
    rows.push_back({{"window", r.window},
                    {"value", opt(r.value)},
                    {"within", r.within},
                    {"omitted", !r.value.has_value()}});
  json results = {{"construction", "nonmixing-probe"},
                  {"l", l},
                  {"a", p.a},
                  {"b", p.b},
                  {"m", p.m.get_str()},
                  {"epsilon", to_json(eps)},
                  {"two_point_bound", to_json(p.two_point_bound)},
                  {"gap_bound", to_json(p.gap_bound)},
                  {"limit", to_json(1 - eps)},
                  {"rows", rows},
                  {"all_within", p.all_within}};
  return envelope("witness nonmixing", c.echo, results, json::array(),
                  {{"epsilon", eps}, {"limit", 1 - eps}},
                  p.all_within ? "ok" : "verification-failed");
}

json report_verify_paper(const std::string& name, std::size_t horizon) {
  VerifyResult v = verify_paper(name, horizon);
  json checks = json::array();
  Exact exact;
  for (const Check& ch : v.checks) {
    json values = json::object();
    for (const auto& [key, value] : ch.values) {
      values[key] = to_json(value);
      exact.emplace_back(ch.name + "." + key, value);
    }
    checks.push_back(
        {{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}, {"values", values}});
  }
  json results = {{"name", v.name},
                  {"base", v.base},
                  {"horizon", v.horizon},
                  {"passed", v.passed()},
                  {"checks", checks}};
  json echo = {{"name", name}, {"horizon", horizon}};
  return envelope("verify-paper", echo, results, json::array(), exact,
                  v.passed() ? "ok" : "verification-failed");
}

json report_operator_norms(const Config& c, std::size_t window, const Integer& k) {
  WindowNorm n = norm_ratio_Tfk(*c.family, window, c.p, k);
  Rational star = star_constant(*c.family, window);
  json results = {{"window", window},
                  {"k", k.get_str()},
                  {"p", to_json(c.p)},
                  {"ratio", to_json(n.ratio)},
                  {"norm_approx", n.norm_decimal},
                  {"star_constant", to_json(star)}};
  return envelope("operator norms", c.echo, results, json::array(),
                  {{"ratio", n.ratio}, {"star_constant", star}});
}

json report_operator_orbit(const Config& c, const WindowSet& s, std::uint64_t k_max) {
  std::vector<Rational> orbit = indicator_orbit(s, *c.family, k_max);
  json measures = json::array(), norms = json::array();
  Exact exact;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    measures.push_back(to_json(orbit[k]));
    norms.push_back(orbit[k] == 0 ? std::string("0") : root_decimal(orbit[k], c.p));
    exact.emplace_back("mu_preimage_" + std::to_string(k), orbit[k]);
  }
  json results = {{"set", set_to_json(s)},
                  {"k_max", k_max},
                  {"p", to_json(c.p)},
                  {"measures", measures},
                  {"norms_approx", norms}};
  return envelope("operator orbit", c.echo, results, json::array(), exact);
}

}  // namespace odolin
