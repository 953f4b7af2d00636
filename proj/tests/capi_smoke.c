/* The header must compile as C. */
#include <stdio.h>
#include <string.h>

#include "odolin/odolin.h"

int main(void) {
  odolin_config* cfg = NULL;
  char* report = NULL;
  const char* text =
      "{\"base\":{\"kind\":\"constant\",\"value\":2},\"measure\":{\"family\":\"thm32\"}}";
  if (odolin_config_parse(text, &cfg) != ODOLIN_OK) return 1;
  if (odolin_witness_mixing(cfg, "3", "1/2", &report) != ODOLIN_OK) return 2;
  int ok = strstr(report, "\"13/45\"") != NULL;
  odolin_string_free(report);
  odolin_config_free(cfg);
  printf("%s\n", ok ? "ok" : "bad report");
  return ok ? 0 : 3;
}
