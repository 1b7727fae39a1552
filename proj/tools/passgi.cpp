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

// passgi command-line driver. Exit codes: 0 success, 1 runtime failure,
// 2 usage or configuration error.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "passgi/passgi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Catalog = std::unique_ptr<pgi_catalog, Deleter<pgi_catalog, pgi_catalog_free>>;
using Sequence = std::unique_ptr<pgi_sequence, Deleter<pgi_sequence, pgi_sequence_free>>;
using Genome = std::unique_ptr<pgi_individual, Deleter<pgi_individual, pgi_individual_free>>;
using Config = std::unique_ptr<pgi_config, Deleter<pgi_config, pgi_config_free>>;
using Result = std::unique_ptr<pgi_result, Deleter<pgi_result, pgi_result_free>>;
using CString = std::unique_ptr<char, Deleter<char, pgi_string_free>>;

void report(pgi_status status) {
  std::fprintf(stderr, "passgi: error: %s\n", pgi_last_error()[0] ? pgi_last_error() : pgi_status_name(status));
}

// Usage-class failures exit 2, everything else 1.
int exit_code_for(pgi_status status) {
  switch (status) {
    case PGI_OK: return kExitOk;
    case PGI_ERR_BASELINE_FAILED:
    case PGI_ERR_ALL_TRIALS_FAILED:
    case PGI_ERR_DEGENERATE_SAMPLE:
    case PGI_ERR_INTERNAL:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> output_dir;
  std::optional<std::string> backend;
  bool quiet = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_backend) {
  cmd->add_option("-c,--config", f.config, "experiment config file")->required();
  cmd->add_option("--seed", f.seed, "base RNG seed (replaces any per-trial seed list)");
  cmd->add_option("--trials", f.trials, "number of independent trials");
  cmd->add_option("--output-dir", f.output_dir, "directory for all artifacts");
  if (with_backend) {
    cmd->add_option("--backend", f.backend, "fitness backend")->check(CLI::IsMember({"external", "simulated"}));
  }
  cmd->add_flag("-q,--quiet", f.quiet, "suppress the per-generation log");
}

// Loads the config and applies flag overrides, which take precedence.
pgi_status load_config(const RunFlags& f, Config& cfg) {
  pgi_config* raw = nullptr;
  pgi_status st = pgi_config_load(f.config.c_str(), &raw);
  if (st != PGI_OK) return st;
  cfg.reset(raw);
  if (f.seed && (st = pgi_config_set_seed(cfg.get(), *f.seed)) != PGI_OK) return st;
  if (f.trials && (st = pgi_config_set_trials(cfg.get(), *f.trials)) != PGI_OK) return st;
  if (f.output_dir && (st = pgi_config_set_output_dir(cfg.get(), f.output_dir->c_str())) != PGI_OK) return st;
  if (f.backend) {
    const auto kind = *f.backend == "external" ? PGI_BACKEND_EXTERNAL : PGI_BACKEND_SIMULATED;
    if ((st = pgi_config_set_backend(cfg.get(), kind)) != PGI_OK) return st;
  }
  return PGI_OK;
}

void log_generation(void*, size_t trial, size_t generation, double best, double mean) {
  std::fprintf(stderr, "[trial %zu] generation %zu best %.6g mean %.6g\n", trial, generation, best, mean);
}

void print_summary_stats(const pgi_summary& s) {
  std::printf("n = %zu\n", s.n);
  std::printf("mean improvement = %.6g %%\n", s.mean_improvement);
  std::printf("sample stddev = %.6g\n", s.sample_stddev);
  std::printf("t = %.6g\n", s.t_statistic);
  std::printf("p (one-tailed, H0: mean = 0, H1: > 0) = %.6g\n", s.p_value_one_tailed);
}

int cmd_evolve(const RunFlags& flags) {
  Config cfg;
  if (const auto st = load_config(flags, cfg); st != PGI_OK) {
    report(st);
    return exit_code_for(st);
  }

  pgi_result* raw = nullptr;
  const auto st = pgi_experiment_run(cfg.get(), flags.quiet ? nullptr : log_generation, nullptr, &raw);
  Result result(raw);
  if (st != PGI_OK && st != PGI_ERR_ALL_TRIALS_FAILED) {
    report(st);
    return exit_code_for(st);
  }

  pgi_eval_info baseline{};
  pgi_result_baseline(result.get(), &baseline);
  std::printf("baseline: mean %.6g s, stddev %.6g s over %zu runs\n", baseline.mean, baseline.sample_stddev,
              baseline.runs);
  for (std::size_t i = 0; i < pgi_result_trial_count(result.get()); ++i) {
    pgi_trial_info t{};
    pgi_result_trial(result.get(), i, &t);
    if (t.completed) {
      std::printf("trial %zu (seed %" PRIu64 "): best %.6g s, improvement %+.4f %%\n", t.trial_index, t.seed,
                  t.best_fitness, t.percent_improvement);
    } else {
      std::printf("trial %zu (seed %" PRIu64 "): FAILED: %s\n", t.trial_index, t.seed,
                  pgi_result_trial_error(result.get(), i));
    }
  }
  pgi_summary s{};
  if (pgi_result_summary(result.get(), &s) == PGI_OK) {
    std::printf("mean improvement %.4f %% +/- %.4f (n = %zu)\n", s.mean_improvement, s.sample_stddev, s.n);
    std::printf("t = %.4f, one-tailed p = %.4g (H0: mean improvement = 0, H1: > 0)\n", s.t_statistic,
                s.p_value_one_tailed);
  }
  for (std::size_t i = 0; i < pgi_result_warning_count(result.get()); ++i) {
    std::fprintf(stderr, "passgi: warning: %s\n", pgi_result_warning(result.get(), i));
  }
  char* dir = nullptr;
  if (pgi_config_output_dir(cfg.get(), &dir) == PGI_OK) {
    CString owned(dir);
    std::printf("artifacts written to %s\n", dir);
  }

  if (st == PGI_ERR_ALL_TRIALS_FAILED) {
    report(st);
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_apply(const std::string& baseline_path, const std::string& individual_path,
              const std::string& catalog_path) {
  pgi_catalog* cat_raw = nullptr;
  pgi_status st = catalog_path == "builtin" ? pgi_catalog_builtin(&cat_raw)
                                            : pgi_catalog_load_file(catalog_path.c_str(), &cat_raw);
  Catalog catalog(cat_raw);
  if (st != PGI_OK) {
    report(st);
    return kExitUsage;
  }

  pgi_sequence* base_raw = nullptr;
  st = baseline_path == "builtin" ? pgi_sequence_builtin_baseline(&base_raw)
                                  : pgi_sequence_load_file(catalog.get(), baseline_path.c_str(), &base_raw);
  Sequence baseline(base_raw);
  if (st != PGI_OK) {
    report(st);
    return kExitUsage;
  }

  pgi_individual* ind_raw = nullptr;
  st = pgi_individual_parse_file(catalog.get(), individual_path.c_str(), &ind_raw);
  Genome genome(ind_raw);
  if (st != PGI_OK) {
    report(st);
    return kExitUsage;
  }

  pgi_sequence* out_raw = nullptr;
  if ((st = pgi_apply_individual(baseline.get(), genome.get(), &out_raw)) != PGI_OK) {
    report(st);
    return kExitFailure;
  }
  Sequence patched(out_raw);
  char* text = nullptr;
  if ((st = pgi_sequence_to_text(patched.get(), &text)) != PGI_OK) {
    report(st);
    return kExitFailure;
  }
  CString owned(text);
  std::fputs(text, stdout);
  return kExitOk;
}

int cmd_baseline(const RunFlags& flags) {
  Config cfg;
  if (const auto st = load_config(flags, cfg); st != PGI_OK) {
    report(st);
    return exit_code_for(st);
  }
  pgi_eval_info info{};
  const auto st = pgi_measure_baseline(cfg.get(), &info);
  if (st != PGI_OK) {
    report(st);
    return exit_code_for(st);
  }
  std::printf("digest = %s\n", info.digest);
  std::printf("runs = %zu\n", info.runs);
  std::printf("mean = %.9g s\n", info.mean);
  std::printf("sample stddev = %.9g s\n", info.sample_stddev);
  return kExitOk;
}

int cmd_stats(const std::string& path) {
  double* values = nullptr;
  std::size_t n = 0;
  pgi_status st = pgi_load_improvements(path.c_str(), &values, &n);
  if (st != PGI_OK) {
    report(st);
    return kExitUsage;
  }
  std::unique_ptr<double, Deleter<double, pgi_doubles_free>> owned(values);
  pgi_summary s{};
  if ((st = pgi_summarize(values, n, &s)) != PGI_OK) {
    report(st);
    return kExitFailure;
  }
  print_summary_stats(s);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"passgi: genetic improvement of optimizer pass sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pgi_version());

  RunFlags evolve_flags;
  auto* evolve = app.add_subcommand("evolve", "run the configured experiment");
  add_run_flags(evolve, evolve_flags, true);

  RunFlags simulate_flags;
  auto* simulate = app.add_subcommand("simulate", "run the experiment against the simulated landscape");
  add_run_flags(simulate, simulate_flags, false);

  std::string apply_baseline;
  std::string apply_individual;
  std::string apply_catalog = "builtin";
  auto* apply = app.add_subcommand("apply", "apply a patch file to a baseline sequence and print the result");
  apply->add_option("-b,--baseline", apply_baseline, "baseline sequence file, or 'builtin'")->required();
  apply->add_option("-i,--individual", apply_individual, "patch file")->required();
  apply->add_option("--catalog", apply_catalog, "pass catalog file, or 'builtin'")->capture_default_str();

  RunFlags baseline_flags;
  auto* baseline = app.add_subcommand("baseline", "measure the unmodified baseline sequence");
  add_run_flags(baseline, baseline_flags, true);

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "t-test over improvements from summary.json or a number list");
  stats->add_option("input", stats_path, "summary.json or list of percentages")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*evolve) return cmd_evolve(evolve_flags);
  if (*simulate) {
    simulate_flags.backend = "simulated";
    return cmd_evolve(simulate_flags);
  }
  if (*apply) return cmd_apply(apply_baseline, apply_individual, apply_catalog);
  if (*baseline) return cmd_baseline(baseline_flags);
  if (*stats) return cmd_stats(stats_path);
  return kExitUsage;
}
