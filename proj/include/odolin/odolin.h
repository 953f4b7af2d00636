#ifndef ODOLIN_ODOLIN_H
#define ODOLIN_ODOLIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(ODOLIN_BUILDING)
#define ODOLIN_API __attribute__((visibility("default")))
#else
#define ODOLIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum odolin_status {
  ODOLIN_OK = 0,
  ODOLIN_ERROR = 1,          /* precondition violated, see odolin_last_error() */
  ODOLIN_CONFIG_ERROR = 2,
  ODOLIN_SIZE_LIMIT = 3,
  ODOLIN_VERIFY_FAILED = 4,  /* report still returned */
  ODOLIN_NOT_CONTINUOUS = 5  /* classify: report still returned */
} odolin_status;

/* Parsed configuration: base sequence, measure family and settings. */
typedef struct odolin_config odolin_config;

/* Reports are JSON strings owned by the caller; release with
   odolin_string_free. Rationals inside are "p/q" strings, big integers are
   decimal strings. */

ODOLIN_API const char* odolin_version(void);
/* Message of the last failure on this thread ("" when none). */
ODOLIN_API const char* odolin_last_error(void);
ODOLIN_API void odolin_string_free(char* s);

ODOLIN_API odolin_status odolin_config_parse(const char* json, odolin_config** out);
ODOLIN_API void odolin_config_free(odolin_config* cfg);

ODOLIN_API odolin_status odolin_family_show(const odolin_config* cfg, char** report);
ODOLIN_API odolin_status odolin_classify(const odolin_config* cfg, char** report);

/* shifts: comma-separated list of shifts, or NULL for all 0 < k < N.
   brute != 0 runs the exhaustive oracle (N <= 16). */
ODOLIN_API odolin_status odolin_psi(const odolin_config* cfg, size_t i, size_t j,
                                    const char* shifts, int brute, char** report);

/* k and eps as decimal / "p/q" strings. */
ODOLIN_API odolin_status odolin_witness_mixing(const odolin_config* cfg, const char* k,
                                               const char* eps, char** report);
ODOLIN_API odolin_status odolin_witness_transitive(const odolin_config* cfg, const char* eps,
                                                   char** report);
ODOLIN_API odolin_status odolin_witness_nonmixing(const odolin_config* cfg, size_t l,
                                                  const char* eps, char** report);

ODOLIN_API odolin_status odolin_verify_paper(const char* name, size_t horizon, char** report);

ODOLIN_API odolin_status odolin_operator_norms(const odolin_config* cfg, size_t window,
                                               const char* k, char** report);
/* set_json: {"box": [null, [0], ...]} | {"block": {"lo", "hi", "cells"}} */
ODOLIN_API odolin_status odolin_operator_orbit(const odolin_config* cfg, const char* set_json,
                                               uint64_t k_max, char** report);

/* mu(f^k(S) ∩ T) as a "p/q" string. */
ODOLIN_API odolin_status odolin_shifted_measure(const odolin_config* cfg, const char* s_json,
                                                const char* t_json, const char* k,
                                                char** measure);

#ifdef __cplusplus
}
#endif

#endif
