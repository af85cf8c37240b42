/* SPDX-License-Identifier: Apache-2.0 */
/* Exercises the C interface from C: handles, status codes and round trips. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "liedrag/liedrag.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void on_criterion(const char* id, const char* title, int passed, double seconds, const char* error,
                         const liedrag_check_line* lines, size_t count, void* user) {
  (void)title;
  (void)seconds;
  (void)error;
  int* seen = (int*)user;
  ++*seen;
  CHECK(strcmp(id, "A1") == 0);
  CHECK(passed == 1);
  CHECK(count == 2);
  for (size_t i = 0; i < count; ++i) CHECK(lines[i].passed == 1 && lines[i].measured <= lines[i].threshold);
}

int main(void) {
  CHECK(strlen(liedrag_version()) > 0);

  /* Status codes and error messages. */
  liedrag_config* cfg = NULL;
  CHECK(liedrag_config_parse("{\"grid.nx\": 16}", &cfg) == LIEDRAG_ERR_CONFIG);
  CHECK(strstr(liedrag_last_error(), "grid.nx") != NULL);
  CHECK(cfg == NULL);
  CHECK(liedrag_config_parse("{\"init.name\": \"nope\"}", &cfg) == LIEDRAG_ERR_CONFIG);
  CHECK(strstr(liedrag_last_error(), "abc_beltrami") != NULL);
  CHECK(liedrag_config_load("/nonexistent/config.json", &cfg) == LIEDRAG_ERR_IO);
  CHECK(liedrag_config_parse(NULL, &cfg) == LIEDRAG_ERR_ARGUMENT);
  CHECK(liedrag_set_threads(0) == LIEDRAG_ERR_ARGUMENT);

  /* Round trip through text. */
  CHECK(liedrag_config_parse("{\"init.name\": \"abc_beltrami\", \"grid.n\": 16, \"run.t_end\": 0.05}", &cfg) ==
        LIEDRAG_OK);
  char* text = NULL;
  CHECK(liedrag_config_serialize(cfg, &text) == LIEDRAG_OK);
  liedrag_config* again = NULL;
  CHECK(liedrag_config_parse(text, &again) == LIEDRAG_OK);
  char* text2 = NULL;
  CHECK(liedrag_config_serialize(again, &text2) == LIEDRAG_OK);
  CHECK(strcmp(text, text2) == 0);
  liedrag_string_free(text);
  liedrag_string_free(text2);
  liedrag_config_free(again);

  CHECK(liedrag_config_set(cfg, "eos.p0", "10") == LIEDRAG_OK);
  CHECK(liedrag_config_set(cfg, "eos.p0", "\"ten\"") == LIEDRAG_ERR_CONFIG);

  /* State: ABC helicity is 3 (2 pi)^3 at t = 0; integrals stay put over a short advance. */
  liedrag_state* st = NULL;
  CHECK(liedrag_state_create(cfg, &st) == LIEDRAG_OK);
  int n[3];
  double len[3];
  CHECK(liedrag_state_grid(st, n, len) == LIEDRAG_OK);
  CHECK(n[0] == 16 && n[1] == 16 && n[2] == 16);
  const double V = pow(2.0 * 3.14159265358979323846, 3);
  double hf = 0.0;
  CHECK(liedrag_state_diagnostic(st, "Hf_eq_hf3", &hf) == LIEDRAG_OK);
  CHECK(fabs(hf - 3.0 * V) < 1e-9 * V);
  double hm = 0.0;
  CHECK(liedrag_state_diagnostic(st, "Hm_eq_maghel2", &hm) == LIEDRAG_OK);
  CHECK(isnan(hm));
  double bogus = 0.0;
  CHECK(liedrag_state_diagnostic(st, "no_such_column", &bogus) == LIEDRAG_ERR_CONFIG);

  double mass0 = 0.0, mass1 = 0.0;
  CHECK(liedrag_state_diagnostic(st, "M_eq_2_1", &mass0) == LIEDRAG_OK);
  CHECK(liedrag_state_advance(st, 0.05) == LIEDRAG_OK);
  CHECK(fabs(liedrag_state_time(st) - 0.05) < 1e-15);
  CHECK(liedrag_state_diagnostic(st, "M_eq_2_1", &mass1) == LIEDRAG_OK);
  CHECK(fabs(mass1 - mass0) <= 1e-12 * mass0);

  const size_t points = 16 * 16 * 16;
  double* buf = (double*)malloc(points * sizeof(double));
  CHECK(liedrag_state_field(st, "u_x", buf, points) == LIEDRAG_OK);
  CHECK(fabs(buf[0]) > 0.0);
  CHECK(liedrag_state_field(st, "u_w", buf, points) == LIEDRAG_ERR_ARGUMENT);
  CHECK(liedrag_state_field(st, "rho", buf, points - 1) == LIEDRAG_ERR_ARGUMENT);
  free(buf);
  liedrag_state_free(st);
  liedrag_config_free(cfg);

  /* Documents. */
  char* doc = NULL;
  CHECK(liedrag_schema(&doc) == LIEDRAG_OK);
  CHECK(strstr(doc, "D_nl1_integral") != NULL);
  liedrag_string_free(doc);
  CHECK(liedrag_list_inits(&doc) == LIEDRAG_OK);
  CHECK(strstr(doc, "gv_foliation") != NULL);
  liedrag_string_free(doc);

  /* A single acceptance criterion through the callback. */
  const char* ids[] = {"A1"};
  int seen = 0;
  int all_passed = 0;
  CHECK(liedrag_check(ids, 1, NULL, on_criterion, &seen, &all_passed) == LIEDRAG_OK);
  CHECK(seen == 1 && all_passed == 1);
  const char* bad[] = {"A11"};
  CHECK(liedrag_check(bad, 1, NULL, NULL, NULL, &all_passed) == LIEDRAG_ERR_CONFIG);
  CHECK(liedrag_check(ids, 1, "not_a_mutation", NULL, NULL, &all_passed) == LIEDRAG_ERR_CONFIG);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C interface checks passed\n");
  return 0;
}
