#include <doctest.h>

#include <json.hpp>
#include <string>

#include "odolin/odolin.h"

using nlohmann::json;

namespace {

const char* kThm32 =
    R"({"base":{"kind":"constant","value":2},"measure":{"family":"thm32"},"horizon":5})";
const char* kThm37 =
    R"({"base":{"kind":"constant","value":4},"measure":{"family":"thm37"},"horizon":5})";

struct Cfg {
  explicit Cfg(const char* text) { status = odolin_config_parse(text, &cfg); }
  ~Cfg() { odolin_config_free(cfg); }
  odolin_config* cfg = nullptr;
  odolin_status status;
};

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  odolin_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("config handles and errors") {
  Cfg ok(kThm32);
  CHECK(ok.status == ODOLIN_OK);
  CHECK(ok.cfg != nullptr);
  Cfg bad(R"({"base":{"kind":"constant","value":2},"measure":{"family":"custom","masses":[["0.5","1/2"]]}})");
  CHECK(bad.status == ODOLIN_CONFIG_ERROR);
  CHECK(bad.cfg == nullptr);
  CHECK(std::string(odolin_last_error()).find("measure.masses[0][0]") != std::string::npos);
  Cfg junk("{not json");
  CHECK(junk.status == ODOLIN_CONFIG_ERROR);
  CHECK(std::string(odolin_version()) == "0.1.0");
}

TEST_CASE("commands through the C API") {
  Cfg c(kThm32);
  char* out = nullptr;
  CHECK(odolin_family_show(c.cfg, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["rows"].size() == 6);

  CHECK(odolin_classify(c.cfg, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["mixing"] == "certified-yes");

  CHECK(odolin_witness_mixing(c.cfg, "3", "1/2", &out) == ODOLIN_OK);
  json w = take(out);
  CHECK(w["results"]["complement_measure"] == "13/45");
  CHECK(w["results"]["set"] == json::parse(R"({"box":[null,[0],[0]]})"));

  CHECK(odolin_witness_mixing(c.cfg, "2", "1/2", &out) == ODOLIN_ERROR);
  CHECK(out == nullptr);
  CHECK(std::string(odolin_last_error()).find("KTooSmall") == 0);

  CHECK(odolin_psi(c.cfg, 0, 2, nullptr, 0, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["value"] == "8/9");
  CHECK(odolin_psi(c.cfg, 0, 2, nullptr, 1, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["value"] == "8/9");
  CHECK(odolin_psi(c.cfg, 0, 2, "3,5", 0, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["k"] == 3);

  CHECK(odolin_operator_norms(c.cfg, 0, "1", &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["ratio"] == "2");
  CHECK(odolin_operator_orbit(c.cfg, R"({"box":[[0]]})", 1, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["measures"] == json::parse(R"(["2/3","1/3"])"));
  CHECK(odolin_operator_orbit(c.cfg, "{", 1, &out) == ODOLIN_CONFIG_ERROR);

  char* m = nullptr;
  CHECK(odolin_shifted_measure(c.cfg, R"({"box":[null,[0],[0]]})", R"({"box":[null,[0],[0]]})", "3",
                               &m) == ODOLIN_OK);
  CHECK(std::string(m) == "0");
  odolin_string_free(m);
}

TEST_CASE("status codes") {
  Cfg c(R"({"base":{"kind":"constant","value":4},"measure":{"family":"uniform"},"size_cap":100})");
  char* out = nullptr;
  CHECK(odolin_psi(c.cfg, 0, 5, nullptr, 0, &out) == ODOLIN_SIZE_LIMIT);
  CHECK(odolin_witness_nonmixing(c.cfg, 0, "1/2", &out) == ODOLIN_ERROR);
  CHECK(std::string(odolin_last_error()).find("EpsilonTooLarge") == 0);
  CHECK(odolin_verify_paper("nope", 5, &out) == ODOLIN_ERROR);
  CHECK(odolin_verify_paper("lemma45", 12, &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["passed"] == true);
  Cfg t(kThm37);
  CHECK(odolin_witness_transitive(t.cfg, "1/3", &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["k"] == "32");
  CHECK(odolin_witness_nonmixing(t.cfg, 2, "1/128", &out) == ODOLIN_OK);
  CHECK(take(out)["results"]["all_within"] == true);
  CHECK(odolin_family_show(nullptr, &out) == ODOLIN_ERROR);
}
