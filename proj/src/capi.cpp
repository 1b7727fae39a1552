// Copyright 2026 The passgi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "passgi/passgi.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "experiment.hpp"
#include "fitness.hpp"
#include "pass_catalog.hpp"
#include "patch.hpp"
#include "stats.hpp"

using namespace passgi;

struct pgi_catalog {
  PassCatalog rep;
};

struct pgi_sequence {
  PassSequence rep;
};

struct pgi_individual {
  Individual rep;
};

struct pgi_config {
  ExperimentConfig rep;
};

struct pgi_result {
  ExperimentResult rep;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_error_line = 0;

pgi_status to_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidPassName: return PGI_ERR_INVALID_PASS_NAME;
    case ErrorKind::kDuplicatePass: return PGI_ERR_DUPLICATE_PASS;
    case ErrorKind::kEmptyCatalog: return PGI_ERR_EMPTY_CATALOG;
    case ErrorKind::kMalformedLine: return PGI_ERR_MALFORMED_LINE;
    case ErrorKind::kUnknownPass: return PGI_ERR_UNKNOWN_PASS;
    case ErrorKind::kMalformedPatchLine: return PGI_ERR_MALFORMED_PATCH_LINE;
    case ErrorKind::kPositionOutOfRange: return PGI_ERR_POSITION_OUT_OF_RANGE;
    case ErrorKind::kIo: return PGI_ERR_IO;
    case ErrorKind::kConfig: return PGI_ERR_CONFIG;
    case ErrorKind::kNonPositiveBaseline: return PGI_ERR_NON_POSITIVE_BASELINE;
    case ErrorKind::kDegenerateSample: return PGI_ERR_DEGENERATE_SAMPLE;
    case ErrorKind::kBaselineFailed: return PGI_ERR_BASELINE_FAILED;
    case ErrorKind::kInvalidArgument: return PGI_ERR_INVALID_ARGUMENT;
  }
  return PGI_ERR_INTERNAL;
}

pgi_status fail(pgi_status status, std::string message, std::size_t line = 0) {
  g_last_error = std::move(message);
  g_last_error_line = line;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
pgi_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  g_last_error_line = 0;
  try {
    return fn();
  } catch (const Error& e) {
    return fail(to_status(e.kind()), std::string(to_string(e.kind())) + ": " + e.what(), e.line());
  } catch (const std::bad_alloc&) {
    return fail(PGI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PGI_ERR_INTERNAL, e.what());
  }
}

#define PGI_REQUIRE(cond)                                                   \
  do {                                                                      \
    if (!(cond)) return fail(PGI_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_eval_info(const EvaluationRecord& r, pgi_eval_info* info) {
  info->status = static_cast<pgi_eval_status>(r.status);
  info->runs = r.runs;
  info->mean = r.mean;
  info->sample_stddev = r.sample_stddev;
  std::memset(info->digest, 0, sizeof info->digest);
  std::strncpy(info->digest, r.sequence_digest.c_str(), sizeof info->digest - 1);
}

void fill_summary(const SummaryStats& s, pgi_summary* out) {
  out->n = s.n;
  out->mean_improvement = s.mean_improvement;
  out->sample_stddev = s.sample_stddev;
  out->t_statistic = s.t_statistic;
  out->p_value_one_tailed = s.p_value_one_tailed;
}

}  // namespace

extern "C" {

const char* pgi_version(void) { return "1.0.0"; }

const char* pgi_status_name(pgi_status status) {
  switch (status) {
    case PGI_OK: return "OK";
    case PGI_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PGI_ERR_INVALID_PASS_NAME: return "InvalidPassName";
    case PGI_ERR_DUPLICATE_PASS: return "DuplicatePass";
    case PGI_ERR_EMPTY_CATALOG: return "EmptyCatalog";
    case PGI_ERR_MALFORMED_LINE: return "MalformedLine";
    case PGI_ERR_UNKNOWN_PASS: return "UnknownPass";
    case PGI_ERR_MALFORMED_PATCH_LINE: return "MalformedPatchLine";
    case PGI_ERR_POSITION_OUT_OF_RANGE: return "PositionOutOfRange";
    case PGI_ERR_IO: return "IoError";
    case PGI_ERR_CONFIG: return "ConfigurationError";
    case PGI_ERR_NON_POSITIVE_BASELINE: return "NonPositiveBaseline";
    case PGI_ERR_DEGENERATE_SAMPLE: return "DegenerateSample";
    case PGI_ERR_BASELINE_FAILED: return "BaselineFailed";
    case PGI_ERR_ALL_TRIALS_FAILED: return "AllTrialsFailed";
    case PGI_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* pgi_last_error(void) { return g_last_error.c_str(); }
size_t pgi_last_error_line(void) { return g_last_error_line; }
void pgi_string_free(char* s) { std::free(s); }

// --- catalog / sequence ------------------------------------------------------

pgi_status pgi_catalog_load_file(const char* path, pgi_catalog** out) {
  return guarded([&] {
    PGI_REQUIRE(path && out);
    *out = new pgi_catalog{load_catalog_file(path)};
    return PGI_OK;
  });
}

pgi_status pgi_catalog_load_text(const char* text, const char* label, pgi_catalog** out) {
  return guarded([&] {
    PGI_REQUIRE(text && out);
    *out = new pgi_catalog{load_catalog(text, label ? label : "")};
    return PGI_OK;
  });
}

pgi_status pgi_catalog_builtin(pgi_catalog** out) {
  return guarded([&] {
    PGI_REQUIRE(out);
    *out = new pgi_catalog{builtin_catalog()};
    return PGI_OK;
  });
}

size_t pgi_catalog_size(const pgi_catalog* catalog) { return catalog ? catalog->rep.size() : 0; }

const char* pgi_catalog_pass(const pgi_catalog* catalog, size_t index) {
  if (!catalog || index >= catalog->rep.size()) return nullptr;
  return catalog->rep[index].str().c_str();
}

void pgi_catalog_free(pgi_catalog* catalog) { delete catalog; }

pgi_status pgi_sequence_load_file(const pgi_catalog* catalog, const char* path, pgi_sequence** out) {
  return guarded([&] {
    PGI_REQUIRE(catalog && path && out);
    *out = new pgi_sequence{load_sequence_file(path, catalog->rep)};
    return PGI_OK;
  });
}

pgi_status pgi_sequence_load_text(const pgi_catalog* catalog, const char* text, pgi_sequence** out) {
  return guarded([&] {
    PGI_REQUIRE(catalog && text && out);
    *out = new pgi_sequence{load_sequence(text, catalog->rep)};
    return PGI_OK;
  });
}

pgi_status pgi_sequence_builtin_baseline(pgi_sequence** out) {
  return guarded([&] {
    PGI_REQUIRE(out);
    *out = new pgi_sequence{builtin_baseline()};
    return PGI_OK;
  });
}

size_t pgi_sequence_size(const pgi_sequence* seq) { return seq ? seq->rep.size() : 0; }

const char* pgi_sequence_pass(const pgi_sequence* seq, size_t index) {
  if (!seq || index >= seq->rep.size()) return nullptr;
  return seq->rep.passes[index].str().c_str();
}

pgi_status pgi_sequence_to_text(const pgi_sequence* seq, char** out) {
  return guarded([&] {
    PGI_REQUIRE(seq && out);
    *out = dup_string(to_text(seq->rep));
    return PGI_OK;
  });
}

pgi_status pgi_sequence_digest(const pgi_sequence* seq, char out[17]) {
  return guarded([&] {
    PGI_REQUIRE(seq && out);
    const auto d = sequence_digest(seq->rep);
    std::memcpy(out, d.c_str(), 17);
    return PGI_OK;
  });
}

void pgi_sequence_free(pgi_sequence* seq) { delete seq; }

pgi_status pgi_search_space_order(size_t catalog_size, size_t sequence_length, double* out) {
  return guarded([&] {
    PGI_REQUIRE(out);
    *out = search_space_order(catalog_size, sequence_length);
    return PGI_OK;
  });
}

// --- individuals -------------------------------------------------------------

pgi_status pgi_individual_parse_text(const pgi_catalog* catalog, const char* text, pgi_individual** out) {
  return guarded([&] {
    PGI_REQUIRE(catalog && text && out);
    *out = new pgi_individual{parse_individual(text, catalog->rep)};
    return PGI_OK;
  });
}

pgi_status pgi_individual_parse_file(const pgi_catalog* catalog, const char* path, pgi_individual** out) {
  return guarded([&] {
    PGI_REQUIRE(catalog && path && out);
    *out = new pgi_individual{parse_individual_file(path, catalog->rep)};
    return PGI_OK;
  });
}

size_t pgi_individual_size(const pgi_individual* ind) { return ind ? ind->rep.size() : 0; }

pgi_status pgi_individual_to_text(const pgi_individual* ind, char** out) {
  return guarded([&] {
    PGI_REQUIRE(ind && out);
    *out = dup_string(serialize_individual(ind->rep));
    return PGI_OK;
  });
}

void pgi_individual_free(pgi_individual* ind) { delete ind; }

pgi_status pgi_apply_individual(const pgi_sequence* baseline, const pgi_individual* ind, pgi_sequence** out) {
  return guarded([&] {
    PGI_REQUIRE(baseline && ind && out);
    *out = new pgi_sequence{apply_individual(baseline->rep, ind->rep)};
    return PGI_OK;
  });
}

// --- config / experiments ----------------------------------------------------

pgi_status pgi_config_load(const char* path, pgi_config** out) {
  return guarded([&] {
    PGI_REQUIRE(path && out);
    *out = new pgi_config{load_experiment_config(path)};
    return PGI_OK;
  });
}

pgi_status pgi_config_set_seed(pgi_config* cfg, uint64_t seed) {
  return guarded([&] {
    PGI_REQUIRE(cfg);
    cfg->rep.ga.rng_seed = seed;
    // An explicit base seed replaces any per-trial seed list.
    cfg->rep.seeds.clear();
    return PGI_OK;
  });
}

pgi_status pgi_config_set_trials(pgi_config* cfg, size_t trials) {
  return guarded([&] {
    PGI_REQUIRE(cfg);
    cfg->rep.trials = trials;
    return PGI_OK;
  });
}

pgi_status pgi_config_set_output_dir(pgi_config* cfg, const char* dir) {
  return guarded([&] {
    PGI_REQUIRE(cfg && dir);
    cfg->rep.output_dir = dir;
    return PGI_OK;
  });
}

pgi_status pgi_config_set_backend(pgi_config* cfg, pgi_backend_kind kind) {
  return guarded([&] {
    PGI_REQUIRE(cfg);
    if (kind != PGI_BACKEND_EXTERNAL && kind != PGI_BACKEND_SIMULATED) {
      return fail(PGI_ERR_INVALID_ARGUMENT, "unknown backend kind");
    }
    cfg->rep.backend.kind = kind == PGI_BACKEND_EXTERNAL ? BackendKind::kExternal : BackendKind::kSimulated;
    return PGI_OK;
  });
}

pgi_status pgi_config_output_dir(const pgi_config* cfg, char** out) {
  return guarded([&] {
    PGI_REQUIRE(cfg && out);
    *out = dup_string(cfg->rep.output_dir.string());
    return PGI_OK;
  });
}

pgi_status pgi_config_to_text(const pgi_config* cfg, char** out) {
  return guarded([&] {
    PGI_REQUIRE(cfg && out);
    *out = dup_string(to_ini(cfg->rep));
    return PGI_OK;
  });
}

void pgi_config_free(pgi_config* cfg) { delete cfg; }

pgi_status pgi_measure_baseline(const pgi_config* cfg, pgi_eval_info* info) {
  return guarded([&] {
    PGI_REQUIRE(cfg && info);
    const auto experiment = prepare_experiment(cfg->rep);
    Evaluator evaluator(experiment.config.backend, nullptr);
    const auto record = evaluator.evaluate(experiment.baseline);
    fill_eval_info(record, info);
    if (record.status != EvalStatus::kOk) {
      return fail(PGI_ERR_BASELINE_FAILED,
                  std::string("baseline failed with status ") + to_string(record.status) + ": " +
                      record.diagnostics);
    }
    return PGI_OK;
  });
}

pgi_status pgi_experiment_run(const pgi_config* cfg, pgi_generation_cb on_generation, void* user,
                              pgi_result** out) {
  return guarded([&] {
    PGI_REQUIRE(cfg && out);
    *out = nullptr;
    const auto experiment = prepare_experiment(cfg->rep);
    RunObserver observer;
    if (on_generation) {
      observer.on_generation = [=](std::size_t trial, const GenerationRecord& r) {
        on_generation(user, trial, r.generation, r.best_fitness.as_double(), r.mean_fitness);
      };
    }
    auto result = std::make_unique<pgi_result>(pgi_result{run_trials(experiment, observer)});
    const bool any = result->rep.completed_trials() > 0;
    *out = result.release();
    if (!any) return fail(PGI_ERR_ALL_TRIALS_FAILED, "all trials failed");
    return PGI_OK;
  });
}

size_t pgi_result_trial_count(const pgi_result* result) { return result ? result->rep.trials.size() : 0; }

pgi_status pgi_result_trial(const pgi_result* result, size_t index, pgi_trial_info* out) {
  return guarded([&] {
    PGI_REQUIRE(result && out);
    if (index >= result->rep.trials.size()) return fail(PGI_ERR_INVALID_ARGUMENT, "trial index out of range");
    const auto& t = result->rep.trials[index];
    out->trial_index = t.trial_index;
    out->seed = t.seed;
    out->completed = t.completed ? 1 : 0;
    out->baseline_fitness = t.baseline_fitness;
    out->best_fitness = t.best_fitness;
    out->initial_best_fitness = t.initial_best_fitness;
    out->percent_improvement = t.percent_improvement;
    out->best_genome_length = t.best_individual.size();
    out->best_sequence_length = t.best_sequence.size();
    out->generations = t.history.size();
    return PGI_OK;
  });
}

const char* pgi_result_trial_error(const pgi_result* result, size_t index) {
  if (!result || index >= result->rep.trials.size()) return "";
  return result->rep.trials[index].error.c_str();
}

pgi_status pgi_result_baseline(const pgi_result* result, pgi_eval_info* out) {
  return guarded([&] {
    PGI_REQUIRE(result && out);
    fill_eval_info(result->rep.baseline, out);
    return PGI_OK;
  });
}

pgi_status pgi_result_summary(const pgi_result* result, pgi_summary* out) {
  return guarded([&] {
    PGI_REQUIRE(result && out);
    if (!result->rep.summary) {
      return fail(PGI_ERR_DEGENERATE_SAMPLE, "no summary statistics for this experiment");
    }
    fill_summary(*result->rep.summary, out);
    return PGI_OK;
  });
}

size_t pgi_result_warning_count(const pgi_result* result) {
  return result ? result->rep.warnings.size() : 0;
}

const char* pgi_result_warning(const pgi_result* result, size_t index) {
  if (!result || index >= result->rep.warnings.size()) return nullptr;
  return result->rep.warnings[index].c_str();
}

void pgi_result_free(pgi_result* result) { delete result; }

// --- statistics --------------------------------------------------------------

pgi_status pgi_percent_improvement(double baseline, double evolved, double* out) {
  return guarded([&] {
    PGI_REQUIRE(out);
    *out = percent_improvement(baseline, evolved);
    return PGI_OK;
  });
}

pgi_status pgi_summarize(const double* improvements, size_t n, pgi_summary* out) {
  return guarded([&] {
    PGI_REQUIRE(out && (improvements || n == 0));
    fill_summary(summarize(std::span<const double>(improvements, n)), out);
    return PGI_OK;
  });
}

pgi_status pgi_load_improvements(const char* path, double** values, size_t* n) {
  return guarded([&] {
    PGI_REQUIRE(path && values && n);
    const auto xs = load_improvements(path);
    *values = static_cast<double*>(std::malloc(std::max<std::size_t>(xs.size(), 1) * sizeof(double)));
    if (!*values) throw std::bad_alloc();
    std::copy(xs.begin(), xs.end(), *values);
    *n = xs.size();
    return PGI_OK;
  });
}

void pgi_doubles_free(double* values) { std::free(values); }

}  // extern "C"
