#include "odolin/odolin.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "odolin/config.hpp"
#include "odolin/error.hpp"
#include "odolin/report.hpp"

struct odolin_config {
  odolin::Config config;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

odolin_status status_of(odolin::ErrorCode code) {
  switch (code) {
    case odolin::ErrorCode::Config: return ODOLIN_CONFIG_ERROR;
    case odolin::ErrorCode::SizeLimit: return ODOLIN_SIZE_LIMIT;
    default: return ODOLIN_ERROR;
  }
}

odolin_status status_of_report(const nlohmann::json& r) {
  const std::string& s = r["status"].get_ref<const std::string&>();
  if (s == "verification-failed") return ODOLIN_VERIFY_FAILED;
  if (s == "not-continuous") return ODOLIN_NOT_CONTINUOUS;
  return ODOLIN_OK;
}

// Runs f, stores its report and maps exceptions to status codes.
template <class F>
odolin_status guarded(char** report, F&& f) {
  last_error.clear();
  if (!report) {
    last_error = "null output pointer";
    return ODOLIN_ERROR;
  }
  *report = nullptr;
  try {
    nlohmann::json r = f();
    *report = dup(r.dump());
    if (!*report) {
      last_error = "out of memory";
      return ODOLIN_ERROR;
    }
    return status_of_report(r);
  } catch (const odolin::Error& e) {
    last_error = std::string(odolin::error_code_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return ODOLIN_ERROR;
  }
}

const odolin::Config& unwrap(const odolin_config* cfg) {
  if (!cfg) throw odolin::Error(odolin::ErrorCode::InvalidArgument, "null configuration");
  return cfg->config;
}

std::string text(const char* s, const char* what) {
  if (!s) throw odolin::Error(odolin::ErrorCode::InvalidArgument, std::string("missing ") + what);
  return s;
}

}  // namespace

extern "C" {

const char* odolin_version(void) { return "0.1.0"; }

const char* odolin_last_error(void) { return last_error.c_str(); }

void odolin_string_free(char* s) { std::free(s); }

odolin_status odolin_config_parse(const char* json, odolin_config** out) {
  last_error.clear();
  if (!out) {
    last_error = "null output pointer";
    return ODOLIN_ERROR;
  }
  *out = nullptr;
  try {
    auto* cfg = new odolin_config{odolin::parse_config_text(text(json, "configuration"))};
    *out = cfg;
    return ODOLIN_OK;
  } catch (const odolin::Error& e) {
    last_error = std::string(odolin::error_code_name(e.code())) + ": " + e.what();
    return e.code() == odolin::ErrorCode::SizeLimit ? ODOLIN_SIZE_LIMIT : ODOLIN_CONFIG_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ODOLIN_CONFIG_ERROR;
  }
}

void odolin_config_free(odolin_config* cfg) { delete cfg; }

odolin_status odolin_family_show(const odolin_config* cfg, char** report) {
  return guarded(report, [&] { return odolin::report_family_show(unwrap(cfg)); });
}

odolin_status odolin_classify(const odolin_config* cfg, char** report) {
  return guarded(report, [&] { return odolin::report_classify(unwrap(cfg)); });
}

odolin_status odolin_psi(const odolin_config* cfg, size_t i, size_t j, const char* shifts,
                         int brute, char** report) {
  return guarded(report, [&] {
    std::optional<std::vector<std::uint64_t>> list;
    if (shifts) {
      list.emplace();
      std::stringstream in(shifts);
      std::string item;
      while (std::getline(in, item, ',')) list->push_back(odolin::to_u64(odolin::parse_integer(item)));
    }
    return odolin::report_psi(unwrap(cfg), i, j, list, brute != 0);
  });
}

odolin_status odolin_witness_mixing(const odolin_config* cfg, const char* k, const char* eps,
                                    char** report) {
  return guarded(report, [&] {
    return odolin::report_witness_mixing(unwrap(cfg), odolin::parse_integer(text(k, "k")),
                                         odolin::parse_rational(text(eps, "epsilon")));
  });
}

odolin_status odolin_witness_transitive(const odolin_config* cfg, const char* eps,
                                        char** report) {
  return guarded(report, [&] {
    return odolin::report_witness_transitive(unwrap(cfg),
                                             odolin::parse_rational(text(eps, "epsilon")));
  });
}

odolin_status odolin_witness_nonmixing(const odolin_config* cfg, size_t l, const char* eps,
                                       char** report) {
  return guarded(report, [&] {
    return odolin::report_witness_nonmixing(unwrap(cfg), l,
                                            odolin::parse_rational(text(eps, "epsilon")));
  });
}

odolin_status odolin_verify_paper(const char* name, size_t horizon, char** report) {
  return guarded(report,
                 [&] { return odolin::report_verify_paper(text(name, "name"), horizon); });
}

odolin_status odolin_operator_norms(const odolin_config* cfg, size_t window, const char* k,
                                    char** report) {
  return guarded(report, [&] {
    return odolin::report_operator_norms(unwrap(cfg), window, odolin::parse_integer(text(k, "k")));
  });
}

odolin_status odolin_operator_orbit(const odolin_config* cfg, const char* set_json,
                                    uint64_t k_max, char** report) {
  return guarded(report, [&] {
    const odolin::Config& c = unwrap(cfg);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text(set_json, "set"));
    } catch (const nlohmann::json::parse_error& e) {
      throw odolin::Error(odolin::ErrorCode::Config, std::string("set: ") + e.what());
    }
    return odolin::report_operator_orbit(c, odolin::set_from_json(j, c.family->base()), k_max);
  });
}

odolin_status odolin_shifted_measure(const odolin_config* cfg, const char* s_json,
                                     const char* t_json, const char* k, char** measure) {
  last_error.clear();
  if (!measure) {
    last_error = "null output pointer";
    return ODOLIN_ERROR;
  }
  *measure = nullptr;
  try {
    const odolin::Config& c = unwrap(cfg);
    auto parse_set = [&](const char* s, const char* what) {
      try {
        return odolin::set_from_json(nlohmann::json::parse(text(s, what)), c.family->base());
      } catch (const nlohmann::json::parse_error& e) {
        throw odolin::Error(odolin::ErrorCode::Config, std::string(what) + ": " + e.what());
      }
    };
    odolin::Rational m = odolin::shifted_intersection_measure(
        parse_set(s_json, "S"), parse_set(t_json, "T"), odolin::parse_integer(text(k, "k")),
        *c.family);
    *measure = dup(odolin::to_string(m));
    return ODOLIN_OK;
  } catch (const odolin::Error& e) {
    last_error = std::string(odolin::error_code_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return ODOLIN_ERROR;
  }
}

}  // extern "C"
