/* wmm — litmus-test checker for weak memory models.
 *
 * C API of the shared library. All functions return a wmm_status; handles
 * are opaque and freed with their matching *_free function. Strings
 * returned through char** out-parameters are owned by the caller and freed
 * with wmm_string_free.
 */

#ifndef WMM_WMM_H
#define WMM_WMM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wmm_status {
  WMM_OK = 0,
  WMM_ERR_IO = 1,
  WMM_ERR_SYNTAX = 2,      /* litmus or model text does not parse */
  WMM_ERR_VALIDATION = 3,  /* parsed but violates a structural rule */
  WMM_ERR_UNKNOWN_NAME = 4,
  WMM_ERR_INVALID_ARG = 5,
  WMM_ERR_INTERNAL = 6
} wmm_status;

typedef struct wmm_test wmm_test;     /* a parsed litmus test */
typedef struct wmm_model wmm_model;   /* a parsed axiomatic model */
typedef struct wmm_result wmm_result; /* one engine verdict */

const char* wmm_version(void);

void wmm_string_free(char* s);

/* --- litmus tests ------------------------------------------------------ */

wmm_status wmm_test_parse(const char* text, wmm_test** out, char** errmsg);
wmm_status wmm_test_load_file(const char* path, wmm_test** out, char** errmsg);
/* Canonical text; parses back to an identical test. */
wmm_status wmm_test_serialize(const wmm_test* test, char** out);
const char* wmm_test_name(const wmm_test* test);
void wmm_test_free(wmm_test* test);

/* --- models ------------------------------------------------------------ */

/* Built-ins: "SC", "TSO", "ARM" (alias "ARMISH"), "RISCV" (alias of ARM). */
wmm_status wmm_model_builtin(const char* name, wmm_model** out, char** errmsg);
wmm_status wmm_model_parse(const char* text, wmm_model** out, char** errmsg);
wmm_status wmm_model_load_file(const char* path, wmm_model** out,
                               char** errmsg);
const char* wmm_model_name(const wmm_model* model);
/* Cat source of a built-in model; NULL if the name is unknown. */
const char* wmm_model_builtin_source(const char* name);
void wmm_model_free(wmm_model* model);

/* --- checking ----------------------------------------------------------- */

wmm_status wmm_check_axiomatic(const wmm_test* test, const wmm_model* model,
                               wmm_result** out, char** errmsg);
/* semantics: "SC", "TSO" or "PIPELINE" (aliases "ARM", "RISCV"). */
wmm_status wmm_check_operational(const wmm_test* test, const char* semantics,
                                 wmm_result** out, char** errmsg);

int wmm_result_reachable(const wmm_result* result); /* 1 reachable, 0 not */
/* Reachable axiomatic/operational: witness final state, one line. */
wmm_status wmm_result_witness(const wmm_result* result, char** out);
/* Axiomatic only: DOT rendering of the witness candidate. */
wmm_status wmm_result_dot(const wmm_result* result, char** out);
/* Operational only: witness trace, one "<thread>: <label>" line per step. */
wmm_status wmm_result_trace(const wmm_result* result, char** out);
/* Exact reachable final-state set, one state per line, sorted. */
wmm_status wmm_result_final_states(const wmm_result* result, char** out);
void wmm_result_free(wmm_result* result);

/* --- one-shot driver ----------------------------------------------------- */

/* Runs a whole configuration and renders the report. config_json:
 *   {
 *     "tests":  ["path.litmus" | "dir", ...],
 *     "models": ["SC" | "TSO" | "ARM" | "RISCV" | "file.cat", ...],
 *     "engine": "axiomatic" | "operational" | "both",
 *     "format": "table" | "json" | "dot" | "trace",
 *     "check_expect": bool,
 *     "fail_on_mismatch": bool,      // optional, default true
 *     "expect": "yes" | "no",        // optional
 *     "workers": int                  // optional, 0 = auto
 *   }
 * exit_code receives 0 (all expectations met, engines agree), 1 (some
 * mismatch) or 2 (usage/parse errors, described in diagnostics).
 */
wmm_status wmm_run(const char* config_json, char** output, char** diagnostics,
                   int* exit_code);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WMM_WMM_H */
