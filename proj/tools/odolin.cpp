// Command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "odolin/odolin.h"

using nlohmann::json;

namespace {

struct Globals {
  std::string config_path;
  std::string format;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> size_cap;
  std::string p;
  std::string family;
  std::string base;
  std::optional<std::uint64_t> window_budget;
  std::optional<std::uint64_t> search_horizon;
};

[[noreturn]] void config_error(const std::string& msg) {
  std::cerr << "error: config: " << msg << "\n";
  std::exit(ODOLIN_CONFIG_ERROR);
}

json parse_base_flag(const std::string& flag) {
  auto colon = flag.find(':');
  if (colon == std::string::npos) config_error("--base expects kind:value, e.g. constant:2");
  std::string kind = flag.substr(0, colon), rest = flag.substr(colon + 1);
  try {
    if (kind == "constant") return {{"kind", "constant"}, {"value", std::stoull(rest)}};
    if (kind == "power") return {{"kind", "power"}, {"offset", std::stoull(rest)}};
    if (kind == "list") {
      std::vector<std::uint64_t> values;
      std::stringstream in(rest);
      std::string item;
      while (std::getline(in, item, ',')) values.push_back(std::stoull(item));
      return {{"kind", "list"}, {"values", values}};
    }
  } catch (const std::exception&) {
    config_error("--base: bad number in \"" + flag + "\"");
  }
  config_error("--base: unknown kind \"" + kind + "\"");
}

json default_base(const std::string& family) {
  if (family == "thm37") return {{"kind", "constant"}, {"value", 4}};
  if (family == "ex33") return {{"kind", "power"}, {"offset", 2}};
  if (family == "thm36") return {{"kind", "list"}, {"values", {2, 3}}};
  return {{"kind", "constant"}, {"value", 2}};
}

json build_config(const Globals& g) {
  json doc = json::object();
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) config_error("cannot read " + g.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
      config_error(g.config_path + ": " + e.what());
    }
    if (!doc.is_object()) config_error(g.config_path + ": expected an object");
  }
  if (!g.family.empty()) doc["measure"] = {{"family", g.family}};
  if (!doc.contains("measure")) doc["measure"] = {{"family", "uniform"}};
  if (!g.base.empty())
    doc["base"] = parse_base_flag(g.base);
  else if (!doc.contains("base") && doc["measure"].is_object() &&
           doc["measure"].value("family", "") != "")
    doc["base"] = default_base(doc["measure"]["family"].get<std::string>());
  if (g.horizon) doc["horizon"] = *g.horizon;
  if (g.size_cap) doc["size_cap"] = *g.size_cap;
  if (!g.p.empty()) doc["p"] = g.p;
  if (g.window_budget) doc["window_budget"] = *g.window_budget;
  if (g.search_horizon) doc["search_horizon"] = *g.search_horizon;
  if (!g.format.empty()) doc["format"] = g.format;
  return doc;
}

class Session {
 public:
  explicit Session(const Globals& g) : doc_(build_config(g)) {
    format_ = doc_.value("format", std::string("text"));
    if (odolin_config_parse(doc_.dump().c_str(), &cfg_) != ODOLIN_OK) {
      std::cerr << "error: " << odolin_last_error() << "\n";
      std::exit(ODOLIN_CONFIG_ERROR);
    }
  }
  ~Session() { odolin_config_free(cfg_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const odolin_config* cfg() const { return cfg_; }
  const std::string& format() const { return format_; }

 private:
  json doc_;
  odolin_config* cfg_ = nullptr;
  std::string format_;
};

// ---- rendering ------------------------------------------------------------

std::string str(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string decimal(const json& v) {
  if (!v.is_string()) return str(v);
  const std::string s = v.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return s;
  // long double keeps 12 digits for everything but extreme magnitudes
  try {
    long double num = std::stold(s.substr(0, slash)), den = std::stold(s.substr(slash + 1));
    std::ostringstream out;
    out << std::setprecision(12) << static_cast<double>(num / den);
    return out.str();
  } catch (const std::exception&) {
    return s;
  }
}

void print_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c)
      std::cout << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << r[c];
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::cout << "# decimal values, approximate; the JSON report is exact\n";
  for (std::size_t c = 0; c < header.size(); ++c) std::cout << (c ? "," : "") << header[c];
  std::cout << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) std::cout << (c ? "," : "") << r[c];
    std::cout << "\n";
  }
}

void emit_table(const std::string& format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& exact_rows,
                const std::vector<std::vector<std::string>>& approx_rows) {
  if (format == "csv")
    print_csv(header, approx_rows);
  else
    print_table(header, exact_rows);
}

void evidence_table(const json& ev, const std::string& format) {
  const std::vector<std::string> keys = {"eta", "delta", "lambda0", "one_minus_eta_over_alpha",
                                         "rho", "diamond_running", "psi"};
  std::vector<std::string> header = {"i", "alpha", "eta", "delta", "lambda0", "(1-eta)/alpha",
                                     "rho", "diamond", "psi", "psi_k"};
  std::vector<std::vector<std::string>> exact, approx;
  for (const json& r : ev["rows"]) {
    std::vector<std::string> e = {str(r["i"]), str(r["alpha"])}, a = e;
    for (const auto& k : keys) {
      e.push_back(str(r[k]));
      a.push_back(decimal(r[k]));
    }
    e.push_back(str(r["psi_k"]));
    a.push_back(str(r["psi_k"]));
    exact.push_back(e);
    approx.push_back(a);
  }
  emit_table(format, header, exact, approx);
  if (format == "csv") return;
  if (!ev["psi_omitted"].empty())
    std::cout << "psi omitted (alpha above size cap) at i = " << ev["psi_omitted"].dump() << "\n";
  if (!ev["psi_ranges"].empty()) {
    std::cout << "sampled psi_{i,j}:";
    for (const json& s : ev["psi_ranges"])
      std::cout << " [" << s["i"] << ".." << s["j"] << "]=" << str(s["value"]);
    std::cout << "\n";
  }
}

void render_family(const json& r, const std::string& format) {
  const json& res = r["results"];
  if (format != "csv") {
    std::cout << "family " << str(res["family"]) << " on base " << res["base"].dump()
              << ", horizon " << res["horizon"] << "\n";
    for (const json& d : res["declarations"])
      std::cout << "  declared " << str(d["fact"]) << " = " << str(d["value"]) << " ["
                << str(d["source"]) << (str(d["justification"]).empty() ? "" : ": ")
                << str(d["justification"]) << "]\n";
  }
  evidence_table(res, format);
  if (format == "csv") return;
  std::cout << "diamond_inf = " << str(res["diamond"]["value"]) << " (l = " << res["diamond"]["l"]
            << ", j = " << res["diamond"]["j"] << ")\n";
  std::cout << "nonatomic product = " << str(res["nonatomic_product"]) << "\n";
  for (const json& w : res["warnings"]) std::cout << "warning: " << str(w) << "\n";
}

std::string certified_line(const json& rules, const std::string& word, bool yes) {
  std::string lower;
  for (char ch : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const std::string target = (yes ? "" : "not ") + lower;
  std::string cited;
  for (const json& rule : rules) {
    if (str(rule["conclusion"]) != target) continue;
    cited += (cited.empty() ? "" : "; ") + str(rule["rule"]);
    for (const json& in : rule["inputs"]) cited += "; " + str(in);
  }
  return (yes ? "" : "NOT ") + word + " (certified: " + cited + ")";
}

void render_classify(const json& r, const std::string& format) {
  const json& res = r["results"];
  if (format == "csv") {
    evidence_table(res["evidence"], format);
    return;
  }
  if (!res["continuous"].get<bool>()) {
    std::cout << "operator not established continuous\n";
  } else {
    std::cout << "continuity: " << str(res["continuity_basis"]) << "\n";
    auto verdict = [&](const std::string& yes, const std::string& status) {
      if (status == "certified-yes" || status == "certified-no")
        std::cout << certified_line(r["rules_fired"], yes, status == "certified-yes") << "\n";
      else if (status == "evidence-leaning")
        std::cout << yes << "-LEANING (finite evidence, not conclusive)\n";
      else
        std::cout << yes << " UNKNOWN\n";
    };
    verdict("TRANSITIVE", str(res["transitive"]));
    verdict("MIXING", str(res["mixing"]));
  }
  for (const json& rule : r["rules_fired"])
    std::cout << "rule " << str(rule["rule"]) << ": " << str(rule["condition"]) << " => "
              << str(rule["conclusion"]) << "\n";
  for (const json& n : res["notes"]) std::cout << "note: " << str(n) << "\n";
  for (const json& w : res["warnings"]) std::cout << "warning: " << str(w) << "\n";
}

void render_witness(const json& r, const std::string& format) {
  const json& res = r["results"];
  if (format == "csv") {
    print_csv({"construction", "k", "set_measure", "complement_measure", "epsilon", "disjoint",
               "accepted"},
              {{str(res["construction"]), str(res["k"]), decimal(res["set_measure"]),
                decimal(res["complement_measure"]), decimal(res["epsilon"]),
                str(res["disjoint"]), str(res["accepted"])}});
    return;
  }
  std::cout << "construction " << str(res["construction"]) << ", k = " << str(res["k"]) << "\n";
  std::cout << "set " << res["set"].dump() << "\n";
  for (const auto& [key, value] : res["parameters"].items())
    std::cout << "  " << key << " = " << str(value) << "\n";
  std::cout << "mu(B) = " << str(res["set_measure"]) << ", mu(complement) = "
            << str(res["complement_measure"]) << " (eps = " << str(res["epsilon"]) << ")\n";
  if (res.contains("complement_image_in_set"))
    std::cout << "mu(f^k(U) ∩ B) = " << str(res["complement_image_in_set"]) << "\n";
  std::cout << "disjoint under f^k: " << (res["disjoint"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << (res["accepted"].get<bool>() ? "ACCEPTED" : "REJECTED") << "\n";
}

void render_nonmixing(const json& r, const std::string& format) {
  const json& res = r["results"];
  std::vector<std::vector<std::string>> exact, approx;
  for (const json& row : res["rows"]) {
    exact.push_back({str(row["window"]), str(row["value"]), str(row["within"])});
    approx.push_back({str(row["window"]), decimal(row["value"]), str(row["within"])});
  }
  if (format != "csv")
    std::cout << "l = " << res["l"] << ", a = " << res["a"] << ", b = " << res["b"]
              << ", m = " << str(res["m"]) << ", eps = " << str(res["epsilon"])
              << " (bounds " << str(res["two_point_bound"]) << ", " << str(res["gap_bound"])
              << ")\n";
  emit_table(format, {"window", "max_value", "within"}, exact, approx);
  if (format != "csv")
    std::cout << (res["all_within"].get<bool>() ? "all window maxima <= " : "EXCEEDED ")
              << str(res["limit"]) << "\n";
}

void render_psi(const json& r, const std::string& format) {
  const json& res = r["results"];
  if (format == "csv") {
    print_csv({"i", "j", "N", "value", "k"}, {{str(res["i"]), str(res["j"]), str(res["N"]),
                                               decimal(res["value"]), str(res["k"])}});
    return;
  }
  std::cout << "psi_{" << res["i"] << "," << res["j"] << "} = " << str(res["value"]) << " ("
            << decimal(res["value"]) << ")\n";
  std::cout << "N = " << str(res["N"]) << ", shift h = " << res["k"] << " (k = "
            << str(res["global_shift"]) << "), method " << str(res["method"]) << "\n";
  std::cout << "witness cells " << res["witness"].dump() << "\n";
}

void render_verify(const json& r, const std::string& format) {
  const json& res = r["results"];
  std::vector<std::vector<std::string>> rows;
  for (const json& c : res["checks"])
    rows.push_back({str(c["name"]), c["passed"].get<bool>() ? "pass" : "FAIL", str(c["detail"])});
  if (format == "csv") {
    print_csv({"check", "result", "detail"}, rows);
    return;
  }
  std::cout << str(res["name"]) << " on base " << str(res["base"]) << ", horizon "
            << res["horizon"] << "\n";
  for (const json& c : res["checks"]) {
    std::cout << (c["passed"].get<bool>() ? "  pass  " : "  FAIL  ") << str(c["name"]) << ": "
              << str(c["detail"]) << "\n";
    for (const auto& [key, value] : c["values"].items())
      std::cout << "        " << key << " = " << str(value) << "\n";
  }
  std::cout << (res["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

void render_norms(const json& r, const std::string& format) {
  const json& res = r["results"];
  if (format == "csv") {
    print_csv({"window", "k", "p", "ratio", "norm", "star_constant"},
              {{str(res["window"]), str(res["k"]), decimal(res["p"]), decimal(res["ratio"]),
                str(res["norm_approx"]), decimal(res["star_constant"])}});
    return;
  }
  std::cout << "window J = " << res["window"] << ", k = " << str(res["k"]) << ", p = "
            << str(res["p"]) << "\n";
  std::cout << "R = " << str(res["ratio"]) << ", ||T^k|| = R^(1/p) ~ " << str(res["norm_approx"])
            << "\n";
  std::cout << "star constant c_J = " << str(res["star_constant"]) << "\n";
}

void render_orbit(const json& r, const std::string& format) {
  const json& res = r["results"];
  std::vector<std::vector<std::string>> exact, approx;
  for (std::size_t k = 0; k < res["measures"].size(); ++k) {
    exact.push_back({std::to_string(k), str(res["measures"][k]), str(res["norms_approx"][k])});
    approx.push_back({std::to_string(k), decimal(res["measures"][k]), str(res["norms_approx"][k])});
  }
  emit_table(format, {"k", "mu(f^-k S)", "norm"}, exact, approx);
}

int finish(odolin_status st, char* report, const std::string& format,
           void (*render)(const json&, const std::string&)) {
  if (!report) {
    std::cerr << "error: " << odolin_last_error() << "\n";
    return st;
  }
  json r = json::parse(report);
  odolin_string_free(report);
  if (format == "json")
    std::cout << r.dump(2) << "\n";
  else
    render(r, format);
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odolin: exact dynamics of composition operators on odometers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--format", g.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--horizon,--L", g.horizon, "coordinate horizon L");
  app.add_option("--size-cap", g.size_cap, "cap on N for full shift scans");
  app.add_option("--p", g.p, "exponent p >= 1, as p or p/q");
  app.add_option("--family", g.family, "uniform, thm32, ex33, thm36, thm37");
  app.add_option("--base", g.base, "constant:C, list:a,b,... or power:OFFSET");
  app.add_option("--window-budget", g.window_budget, "coordinates searched by witnesses");
  app.add_option("--search-horizon", g.search_horizon, "horizon for the mixing witness l");

  int code = 0;
  auto* family = app.add_subcommand("family", "measure family commands");
  family->require_subcommand(1);
  family->add_subcommand("show", "per-coordinate table")->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_family_show(s.cfg(), &out);
    code = finish(st, out, s.format(), render_family);
  });

  app.add_subcommand("classify", "transitivity / mixing verdict")->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_classify(s.cfg(), &out);
    code = finish(st, out, s.format(), render_classify);
  });

  auto* psi = app.add_subcommand("psi", "psi_{i,j} by the cycle DP");
  std::size_t pi = 0, pj = 0;
  std::string shifts;
  bool brute = false;
  psi->add_option("--i", pi, "first coordinate")->required();
  psi->add_option("--j", pj, "last coordinate (default i)");
  psi->add_option("--shifts", shifts, "comma-separated shifts to try");
  psi->add_flag("--brute", brute, "exhaustive oracle, N <= 16");
  psi->callback([&] {
    if (psi->count("--j") == 0) pj = pi;
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_psi(s.cfg(), pi, pj, shifts.empty() ? nullptr : shifts.c_str(),
                             brute ? 1 : 0, &out);
    code = finish(st, out, s.format(), render_psi);
  });

  auto* witness = app.add_subcommand("witness", "explicit witness sets");
  witness->require_subcommand(1);
  std::string wk, weps;
  std::size_t wl = 0;
  auto* wm = witness->add_subcommand("mixing", "two-coordinate set B_k for a shift k");
  wm->add_option("--k", wk, "shift k")->required();
  wm->add_option("--eps", weps, "epsilon as p/q")->required();
  wm->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_witness_mixing(s.cfg(), wk.c_str(), weps.c_str(), &out);
    code = finish(st, out, s.format(), render_witness);
  });
  auto* wt = witness->add_subcommand("transitive", "block set from a psi witness");
  wt->add_option("--eps", weps, "epsilon as p/q")->required();
  wt->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_witness_transitive(s.cfg(), weps.c_str(), &out);
    code = finish(st, out, s.format(), render_witness);
  });
  auto* wn = witness->add_subcommand("nonmixing", "shift that every large set meets");
  wn->add_option("--l", wl, "coordinate l")->required();
  wn->add_option("--eps", weps, "epsilon as p/q")->required();
  wn->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_witness_nonmixing(s.cfg(), wl, weps.c_str(), &out);
    code = finish(st, out, s.format(), render_nonmixing);
  });

  auto* verify = app.add_subcommand("verify-paper", "reproduce a construction's inequalities");
  std::string vname;
  verify->add_option("name", vname, "thm32, ex33, thm36, thm37 or lemma45")
      ->required()
      ->check(CLI::IsMember({"thm32", "ex33", "thm36", "thm37", "lemma45"}));
  verify->callback([&] {
    std::string format = g.format.empty() ? "text" : g.format;
    char* out = nullptr;
    odolin_status st = odolin_verify_paper(vname.c_str(), g.horizon.value_or(20), &out);
    code = finish(st, out, format, render_verify);
  });

  auto* op = app.add_subcommand("operator", "composition operator on window functions");
  op->require_subcommand(1);
  std::size_t owindow = 0;
  std::string ok_str, oset;
  std::uint64_t okmax = 0;
  auto* norms = op->add_subcommand("norms", "norm of T^k and the star constant");
  norms->add_option("--window", owindow, "window J")->required();
  norms->add_option("--k", ok_str, "power k")->required();
  norms->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_operator_norms(s.cfg(), owindow, ok_str.c_str(), &out);
    code = finish(st, out, s.format(), render_norms);
  });
  auto* orbit = op->add_subcommand("orbit", "mu(f^-k S) for k = 0..k_max");
  orbit->add_option("--set", oset, "window set as JSON")->required();
  orbit->add_option("--k-max", okmax, "largest k")->required();
  orbit->callback([&] {
    Session s(g);
    char* out = nullptr;
    odolin_status st = odolin_operator_orbit(s.cfg(), oset.c_str(), okmax, &out);
    code = finish(st, out, s.format(), render_orbit);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ODOLIN_CONFIG_ERROR;
  }
  return code;
}
