/*
 * Copyright 2026 The passgi Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * passgi C API: genetic improvement of optimizer pass sequences.
 *
 * Every object is an opaque handle released with its *_free function. Every
 * fallible call returns a pgi_status; on failure pgi_last_error() holds a
 * thread-local message and pgi_last_error_line() the 1-based input line, or 0.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with pgi_string_free().
 */

#ifndef PASSGI_PASSGI_H_
#define PASSGI_PASSGI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PGI_API __declspec(dllexport)
#else
#define PGI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgi_status {
  PGI_OK = 0,
  PGI_ERR_INVALID_ARGUMENT = 1,
  PGI_ERR_INVALID_PASS_NAME = 2,
  PGI_ERR_DUPLICATE_PASS = 3,
  PGI_ERR_EMPTY_CATALOG = 4,
  PGI_ERR_MALFORMED_LINE = 5,
  PGI_ERR_UNKNOWN_PASS = 6,
  PGI_ERR_MALFORMED_PATCH_LINE = 7,
  PGI_ERR_POSITION_OUT_OF_RANGE = 8,
  PGI_ERR_IO = 9,
  PGI_ERR_CONFIG = 10,
  PGI_ERR_NON_POSITIVE_BASELINE = 11,
  PGI_ERR_DEGENERATE_SAMPLE = 12,
  PGI_ERR_BASELINE_FAILED = 13,
  PGI_ERR_ALL_TRIALS_FAILED = 14,
  PGI_ERR_INTERNAL = 15
} pgi_status;

typedef enum pgi_backend_kind {
  PGI_BACKEND_EXTERNAL = 0,
  PGI_BACKEND_SIMULATED = 1
} pgi_backend_kind;

typedef enum pgi_eval_status {
  PGI_EVAL_OK = 0,
  PGI_EVAL_COMPILE_ERROR = 1,
  PGI_EVAL_RUN_ERROR = 2,
  PGI_EVAL_TIMEOUT = 3
} pgi_eval_status;

typedef struct pgi_catalog pgi_catalog;
typedef struct pgi_sequence pgi_sequence;
typedef struct pgi_individual pgi_individual;
typedef struct pgi_config pgi_config;
typedef struct pgi_result pgi_result;

PGI_API const char* pgi_version(void);
PGI_API const char* pgi_status_name(pgi_status status);
PGI_API const char* pgi_last_error(void);
PGI_API size_t pgi_last_error_line(void);
PGI_API void pgi_string_free(char* s);

/* --- Pass catalog and sequences ------------------------------------------ */

PGI_API pgi_status pgi_catalog_load_file(const char* path, pgi_catalog** out);
PGI_API pgi_status pgi_catalog_load_text(const char* text, const char* label, pgi_catalog** out);
/* The shipped legacy -O3 snapshot. */
PGI_API pgi_status pgi_catalog_builtin(pgi_catalog** out);
PGI_API size_t pgi_catalog_size(const pgi_catalog* catalog);
/* NULL when index is out of range. Valid while the catalog lives. */
PGI_API const char* pgi_catalog_pass(const pgi_catalog* catalog, size_t index);
PGI_API void pgi_catalog_free(pgi_catalog* catalog);

PGI_API pgi_status pgi_sequence_load_file(const pgi_catalog* catalog, const char* path,
                                          pgi_sequence** out);
PGI_API pgi_status pgi_sequence_load_text(const pgi_catalog* catalog, const char* text,
                                          pgi_sequence** out);
PGI_API pgi_status pgi_sequence_builtin_baseline(pgi_sequence** out);
PGI_API size_t pgi_sequence_size(const pgi_sequence* seq);
PGI_API const char* pgi_sequence_pass(const pgi_sequence* seq, size_t index);
/* One pass per line. */
PGI_API pgi_status pgi_sequence_to_text(const pgi_sequence* seq, char** out);
/* 16 hex digits identifying the ordered pass list; buffer needs 17 bytes. */
PGI_API pgi_status pgi_sequence_digest(const pgi_sequence* seq, char out[17]);
PGI_API void pgi_sequence_free(pgi_sequence* seq);

/* log10 of catalog_size^sequence_length. */
PGI_API pgi_status pgi_search_space_order(size_t catalog_size, size_t sequence_length, double* out);

/* --- Patch genomes ------------------------------------------------------- */

/* Lines: `insert <pos> <pass>` | `delete <pos>` | `replace <pos> <pass>`. */
PGI_API pgi_status pgi_individual_parse_text(const pgi_catalog* catalog, const char* text,
                                             pgi_individual** out);
PGI_API pgi_status pgi_individual_parse_file(const pgi_catalog* catalog, const char* path,
                                             pgi_individual** out);
PGI_API size_t pgi_individual_size(const pgi_individual* ind);
PGI_API pgi_status pgi_individual_to_text(const pgi_individual* ind, char** out);
PGI_API void pgi_individual_free(pgi_individual* ind);

/* Applies the patches in order to a copy of baseline. */
PGI_API pgi_status pgi_apply_individual(const pgi_sequence* baseline, const pgi_individual* ind,
                                        pgi_sequence** out);

/* --- Experiments --------------------------------------------------------- */

PGI_API pgi_status pgi_config_load(const char* path, pgi_config** out);
PGI_API pgi_status pgi_config_set_seed(pgi_config* cfg, uint64_t seed);
PGI_API pgi_status pgi_config_set_trials(pgi_config* cfg, size_t trials);
PGI_API pgi_status pgi_config_set_output_dir(pgi_config* cfg, const char* dir);
PGI_API pgi_status pgi_config_set_backend(pgi_config* cfg, pgi_backend_kind kind);
PGI_API pgi_status pgi_config_output_dir(const pgi_config* cfg, char** out);
/* The effective config in the file format. */
PGI_API pgi_status pgi_config_to_text(const pgi_config* cfg, char** out);
PGI_API void pgi_config_free(pgi_config* cfg);

typedef struct pgi_eval_info {
  pgi_eval_status status;
  size_t runs;
  double mean;
  double sample_stddev;
  char digest[17];
} pgi_eval_info;

/* PGI_ERR_BASELINE_FAILED when the baseline does not compile or run; info is
 * still filled in and pgi_last_error() carries the diagnostics. */
PGI_API pgi_status pgi_measure_baseline(const pgi_config* cfg, pgi_eval_info* info);

typedef void (*pgi_generation_cb)(void* user, size_t trial, size_t generation, double best_fitness,
                                  double mean_fitness);

/* Runs every trial and writes the artifacts. On PGI_OK or
 * PGI_ERR_ALL_TRIALS_FAILED *out holds the result. */
PGI_API pgi_status pgi_experiment_run(const pgi_config* cfg, pgi_generation_cb on_generation,
                                      void* user, pgi_result** out);

typedef struct pgi_trial_info {
  size_t trial_index;
  uint64_t seed;
  int completed;
  double baseline_fitness;
  double best_fitness;
  double initial_best_fitness;
  double percent_improvement;
  size_t best_genome_length;
  size_t best_sequence_length;
  size_t generations;
} pgi_trial_info;

typedef struct pgi_summary {
  size_t n;
  double mean_improvement;
  double sample_stddev;
  double t_statistic;
  double p_value_one_tailed;
} pgi_summary;

PGI_API size_t pgi_result_trial_count(const pgi_result* result);
PGI_API pgi_status pgi_result_trial(const pgi_result* result, size_t index, pgi_trial_info* out);
/* Empty string for completed trials. */
PGI_API const char* pgi_result_trial_error(const pgi_result* result, size_t index);
PGI_API pgi_status pgi_result_baseline(const pgi_result* result, pgi_eval_info* out);
/* PGI_ERR_DEGENERATE_SAMPLE when fewer than two trials completed or the
 * improvements have no spread. */
PGI_API pgi_status pgi_result_summary(const pgi_result* result, pgi_summary* out);
PGI_API size_t pgi_result_warning_count(const pgi_result* result);
PGI_API const char* pgi_result_warning(const pgi_result* result, size_t index);
PGI_API void pgi_result_free(pgi_result* result);

/* --- Statistics ---------------------------------------------------------- */

PGI_API pgi_status pgi_percent_improvement(double baseline, double evolved, double* out);
/* One-sample t-test, H0: mean = 0 against H1: mean > 0. */
PGI_API pgi_status pgi_summarize(const double* improvements, size_t n, pgi_summary* out);
/* Reads improvements from a summary.json or a plain list of numbers. Release
 * *values with pgi_doubles_free. */
PGI_API pgi_status pgi_load_improvements(const char* path, double** values, size_t* n);
PGI_API void pgi_doubles_free(double* values);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PASSGI_PASSGI_H_ */
