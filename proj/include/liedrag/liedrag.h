/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the liedrag solver and diagnostics.
 *
 * Objects are opaque handles created by *_create / *_load / *_parse and
 * released by the matching *_free. Every fallible call returns a
 * liedrag_status; on failure liedrag_last_error() describes the problem.
 * Strings returned through char** are owned by the caller and released with
 * liedrag_string_free.
 */
#ifndef LIEDRAG_LIEDRAG_H
#define LIEDRAG_LIEDRAG_H

#include <stddef.h>

#if defined(_WIN32)
#define LIEDRAG_API __declspec(dllexport)
#else
#define LIEDRAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum liedrag_status {
  LIEDRAG_OK = 0,
  LIEDRAG_ERR_CONFIG = 1,
  LIEDRAG_ERR_DOMAIN = 2,
  LIEDRAG_ERR_GRID_MISMATCH = 3,
  LIEDRAG_ERR_BLOWUP = 4,
  LIEDRAG_ERR_IO = 5,
  LIEDRAG_ERR_INTERNAL = 6,
  LIEDRAG_ERR_ARGUMENT = 7
} liedrag_status;

typedef struct liedrag_config liedrag_config;
typedef struct liedrag_state liedrag_state;

LIEDRAG_API const char* liedrag_version(void);
LIEDRAG_API const char* liedrag_status_name(liedrag_status status);
/* Message of the last failure on the calling thread; empty if none. */
LIEDRAG_API const char* liedrag_last_error(void);
LIEDRAG_API void liedrag_string_free(char* s);

/* Caps worker threads for grid loops and transforms (n >= 1). */
LIEDRAG_API liedrag_status liedrag_set_threads(int n);

/* ---- configuration ---------------------------------------------------- */

LIEDRAG_API liedrag_status liedrag_config_load(const char* path, liedrag_config** out);
LIEDRAG_API liedrag_status liedrag_config_parse(const char* text, liedrag_config** out);
/* Recipe defaults for init_name, every other key at its default. */
LIEDRAG_API liedrag_status liedrag_config_default(const char* init_name, liedrag_config** out);
/* Override one key with a JSON value, e.g. ("run.t_end", "0.5"). */
LIEDRAG_API liedrag_status liedrag_config_set(liedrag_config* cfg, const char* key, const char* json_value);
/* Every key with defaults resolved, sorted, as a JSON object. */
LIEDRAG_API liedrag_status liedrag_config_serialize(const liedrag_config* cfg, char** out);
LIEDRAG_API void liedrag_config_free(liedrag_config* cfg);

/* JSON documents: config keys plus diagnostics.csv columns; recipe list. */
LIEDRAG_API liedrag_status liedrag_schema(char** out);
LIEDRAG_API liedrag_status liedrag_list_inits(char** out);

/* ---- runs --------------------------------------------------------------- */

/* Runs the scenario and writes its outputs to output.dir. Returns
 * LIEDRAG_ERR_BLOWUP if the run blew up; the outputs up to
 * *last_valid_time (may be NULL) are kept. */
LIEDRAG_API liedrag_status liedrag_run(const liedrag_config* cfg, double* last_valid_time);

/* ---- states ------------------------------------------------------------- */

LIEDRAG_API liedrag_status liedrag_state_create(const liedrag_config* cfg, liedrag_state** out);
/* Advance to time t with the configuration's run.cfl or run.dt. */
LIEDRAG_API liedrag_status liedrag_state_advance(liedrag_state* state, double t);
LIEDRAG_API double liedrag_state_time(const liedrag_state* state);
LIEDRAG_API liedrag_status liedrag_state_grid(const liedrag_state* state, int n[3], double length[3]);
/* Value of one integral column of diagnostics.csv (see liedrag_schema); NaN
 * when it does not apply to the state. */
LIEDRAG_API liedrag_status liedrag_state_diagnostic(const liedrag_state* state, const char* column, double* value);
/* Copy a field ("rho", "S", "phi", "r", "lambda_tilde", "mu", "u_x", "B_y",
 * "Atilde_z", "Gamma_x", ...) in row-major, z-fastest order. len must equal
 * the number of grid points. */
LIEDRAG_API liedrag_status liedrag_state_field(const liedrag_state* state, const char* name, double* buffer,
                                               size_t len);
LIEDRAG_API void liedrag_state_free(liedrag_state* state);

/* ---- acceptance --------------------------------------------------------- */

typedef struct liedrag_check_line {
  const char* label;
  double measured;
  double threshold;
  const char* relation; /* "<=", ">" or "in [lo, hi]" */
  int passed;
} liedrag_check_line;

typedef void (*liedrag_check_callback)(const char* id, const char* title, int passed, double seconds,
                                       const char* error, const liedrag_check_line* lines, size_t count,
                                       void* user);

/* Evaluates the named criteria (ids NULL or count 0: all). mutation may be
 * NULL or a negative-control name. *all_passed receives 1 if every criterion
 * passed. The callback runs once per criterion as it completes. */
LIEDRAG_API liedrag_status liedrag_check(const char* const* ids, size_t count, const char* mutation,
                                         liedrag_check_callback callback, void* user, int* all_passed);
/* JSON list of {id, title} and the accepted mutation names. */
LIEDRAG_API liedrag_status liedrag_list_checks(char** out);

#ifdef __cplusplus
}
#endif

#endif /* LIEDRAG_LIEDRAG_H */
