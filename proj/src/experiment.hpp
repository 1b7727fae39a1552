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

#ifndef PASSGI_EXPERIMENT_HPP_
#define PASSGI_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "fitness.hpp"
#include "pass_catalog.hpp"
#include "stats.hpp"

namespace passgi {

// Path value that selects the shipped legacy -O3 snapshot instead of a file.
inline constexpr std::string_view kBuiltinPath = "builtin";

struct ExperimentConfig {
  std::filesystem::path catalog_path{kBuiltinPath};
  std::filesystem::path baseline_path{kBuiltinPath};
  // Hidden target for the simulated backend; defaults to the baseline.
  std::filesystem::path simulated_target_path;
  GAConfig ga;
  BackendConfig backend;
  std::size_t trials = 8;
  std::filesystem::path output_dir = "passgi-out";
  // Explicit per-trial seeds; when empty trial i uses ga.rng_seed + i.
  std::vector<std::uint64_t> seeds;
  bool remeasure_baseline = false;
  bool persist_cache = true;
  // Worker threads for simulated trials; 0 picks the hardware concurrency.
  std::size_t workers = 0;

  std::uint64_t trial_seed(std::size_t trial) const {
    return seeds.empty() ? ga.rng_seed + trial : seeds.at(trial);
  }

  // Throws kConfig.
  void validate() const;
};

// Parses the INI-style config file. Relative paths are resolved against the
// directory holding the file; unknown sections or keys are errors.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::filesystem::path& base_dir = {});
// Renders a config that parse_experiment_config reads back unchanged.
std::string to_ini(const ExperimentConfig& cfg);

// A config with its catalog, baseline and simulated target loaded.
struct Experiment {
  ExperimentConfig config;
  PassCatalog catalog;
  PassSequence baseline;
};

// Loads every referenced file. Failures are kConfig errors naming the path.
Experiment prepare_experiment(ExperimentConfig cfg);

struct TrialResult {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  bool completed = false;
  std::string error;
  double baseline_fitness = 0.0;
  double best_fitness = 0.0;
  double initial_best_fitness = 0.0;
  double percent_improvement = 0.0;
  Individual best_individual;
  PassSequence best_sequence;
  EvolutionHistory history;
};

struct ExperimentResult {
  EvaluationRecord baseline;
  std::vector<TrialResult> trials;
  std::optional<SummaryStats> summary;
  std::vector<std::string> warnings;

  std::size_t completed_trials() const;
};

// Evaluates the unmodified baseline. Throws kBaselineFailed when the
// baseline does not compile or run, since nothing can be compared to it.
EvaluationRecord measure_baseline(Evaluator& evaluator, const PassSequence& baseline);
EvaluationRecord measure_baseline(const Experiment& experiment);

struct RunObserver {
  // Called once per generation of every trial. May be called from worker
  // threads, but never concurrently.
  std::function<void(std::size_t trial, const GenerationRecord&)> on_generation;
};

// Runs every trial, summarizes percent improvements and, when
// config.output_dir is non-empty, writes all artifacts there.
ExperimentResult run_trials(const Experiment& experiment, const RunObserver& observer = {});

// Artifact writers, exposed for reuse by the tools.
std::string history_csv(const EvolutionHistory& history);
std::string summary_json(const Experiment& experiment, const ExperimentResult& result);
void write_artifacts(const Experiment& experiment, const ExperimentResult& result);

// Reads improvements from a summary.json (completed trials) or from a plain
// whitespace separated list of numbers with '#' comments. Throws kIo or
// kMalformedLine.
std::vector<double> load_improvements(const std::filesystem::path& path);

}  // namespace passgi

#endif  // PASSGI_EXPERIMENT_HPP_
