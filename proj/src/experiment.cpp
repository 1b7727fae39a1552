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

#include "experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "error.hpp"
#include "text_lines.hpp"

namespace passgi {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::size_t ExperimentResult::completed_trials() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return t.completed; }));
}

namespace {

template <typename T, typename Fn>
T load_or_config_error(const fs::path& path, const char* what, Fn&& load) {
  try {
    return load();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig,
                std::string(what) + " '" + path.string() + "': " + e.what(), e.line());
  }
}

}  // namespace

Experiment prepare_experiment(ExperimentConfig cfg) {
  cfg.validate();

  auto catalog = cfg.catalog_path == kBuiltinPath
                     ? builtin_catalog()
                     : load_or_config_error<PassCatalog>(cfg.catalog_path, "catalog", [&] {
                         return load_catalog_file(cfg.catalog_path);
                       });
  auto baseline = cfg.baseline_path == kBuiltinPath
                      ? builtin_baseline()
                      : load_or_config_error<PassSequence>(cfg.baseline_path, "baseline", [&] {
                          return load_sequence_file(cfg.baseline_path, catalog);
                        });
  if (cfg.catalog_path != kBuiltinPath && cfg.baseline_path == kBuiltinPath) {
    for (const auto& p : baseline.passes) {
      if (!catalog.contains(p.str())) {
        throw Error(ErrorKind::kConfig, "built-in baseline uses pass '" + p.str() +
                                            "' missing from catalog '" + cfg.catalog_path.string() + "'");
      }
    }
  }

  if (cfg.backend.kind == BackendKind::kSimulated) {
    cfg.backend.sim.target =
        cfg.simulated_target_path.empty()
            ? baseline
            : load_or_config_error<PassSequence>(cfg.simulated_target_path, "simulated target", [&] {
                return load_sequence_file(cfg.simulated_target_path, catalog);
              });
  } else if (!fs::exists(cfg.backend.source_path)) {
    throw Error(ErrorKind::kConfig, "source file '" + cfg.backend.source_path.string() + "' not found");
  }
  if (cfg.backend.workdir.empty() && !cfg.output_dir.empty()) cfg.backend.workdir = cfg.output_dir / "work";

  return Experiment{std::move(cfg), std::move(catalog), std::move(baseline)};
}

EvaluationRecord measure_baseline(Evaluator& evaluator, const PassSequence& baseline) {
  auto record = evaluator.evaluate(baseline);
  if (record.status != EvalStatus::kOk) {
    throw Error(ErrorKind::kBaselineFailed, std::string("baseline sequence failed with status ") +
                                                to_string(record.status) + ": " + record.diagnostics);
  }
  return record;
}

EvaluationRecord measure_baseline(const Experiment& experiment) {
  Evaluator evaluator(experiment.config.backend, nullptr);
  return measure_baseline(evaluator, experiment.baseline);
}

namespace {

TrialResult run_one_trial(const Experiment& ex, std::size_t trial, double baseline_fitness,
                          Evaluator& evaluator, const RunObserver& observer, std::mutex& observer_mu) {
  TrialResult t;
  t.trial_index = trial;
  t.seed = ex.config.trial_seed(trial);
  t.baseline_fitness = baseline_fitness;

  GAConfig ga = ex.config.ga;
  ga.rng_seed = t.seed;
  auto fitness = [&](const PassSequence& seq) { return evaluator.fitness(seq); };
  GenerationObserver on_gen;
  if (observer.on_generation) {
    on_gen = [&](const GenerationRecord& r) {
      std::lock_guard lock(observer_mu);
      observer.on_generation(trial, r);
    };
  }

  auto evolved = evolve(ga, ex.baseline, ex.catalog, fitness, on_gen);
  t.history = std::move(evolved.history);
  t.best_individual = std::move(evolved.best);
  t.best_sequence = apply_individual(ex.baseline, t.best_individual);
  if (evolved.best_fitness.is_penalty()) {
    t.error = "every candidate failed to evaluate";
    return t;
  }
  t.best_fitness = evolved.best_fitness.seconds();
  t.initial_best_fitness = t.history.front().best_fitness.as_double();
  t.percent_improvement = percent_improvement(baseline_fitness, t.best_fitness);
  t.completed = true;
  return t;
}

}  // namespace

ExperimentResult run_trials(const Experiment& ex, const RunObserver& observer) {
  const auto& cfg = ex.config;
  std::shared_ptr<FitnessCache> cache;
  if (cfg.persist_cache && !cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    cache = std::make_shared<FitnessCache>(cfg.output_dir / "fitness_cache.tsv", cfg.backend.fingerprint());
  } else {
    cache = std::make_shared<FitnessCache>();
  }
  Evaluator evaluator(cfg.backend, cache);

  ExperimentResult result;
  result.baseline = measure_baseline(evaluator, ex.baseline);
  result.trials.resize(cfg.trials);

  std::mutex observer_mu;
  auto run_trial = [&](std::size_t i) {
    try {
      double baseline_fitness = result.baseline.mean;
      if (cfg.remeasure_baseline && i > 0) {
        // Bypass the cache so the baseline is timed again in this trial's
        // conditions.
        Evaluator fresh(cfg.backend, nullptr);
        baseline_fitness = measure_baseline(fresh, ex.baseline).mean;
      }
      result.trials[i] = run_one_trial(ex, i, baseline_fitness, evaluator, observer, observer_mu);
    } catch (const std::exception& e) {
      result.trials[i].trial_index = i;
      result.trials[i].seed = cfg.trial_seed(i);
      result.trials[i].completed = false;
      result.trials[i].error = e.what();
    }
  };

  // Timing runs share the machine, so external trials never overlap.
  const bool parallel = cfg.backend.kind == BackendKind::kSimulated && cfg.trials > 1;
  if (parallel) {
    std::size_t workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.trials);
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) run_trial(i);
      });
    }
  } else {
    for (std::size_t i = 0; i < cfg.trials; ++i) run_trial(i);
  }

  std::vector<double> improvements;
  for (const auto& t : result.trials) {
    if (t.completed) {
      improvements.push_back(t.percent_improvement);
    } else {
      result.warnings.push_back("trial " + std::to_string(t.trial_index) + " failed: " + t.error);
    }
  }
  if (improvements.size() < cfg.trials) {
    result.warnings.push_back("summary computed over " + std::to_string(improvements.size()) + " of " +
                              std::to_string(cfg.trials) + " trials");
  }
  try {
    result.summary = summarize(improvements);
  } catch (const Error& e) {
    result.warnings.push_back(std::string("no t-test: ") + e.what());
  }

  if (!cfg.output_dir.empty()) write_artifacts(ex, result);
  return result;
}

namespace {

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

// JSON has no infinity; PENALTY values are written as null.
ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

std::string history_csv(const EvolutionHistory& history) {
  std::string out = "generation,best_fitness,mean_fitness\n";
  for (const auto& r : history) {
    out += std::to_string(r.generation) + ',' + shortest(r.best_fitness.as_double()) + ',' +
           shortest(r.mean_fitness) + '\n';
  }
  return out;
}

std::string summary_json(const Experiment& ex, const ExperimentResult& result) {
  ordered_json j;
  j["backend"] = to_string(ex.config.backend.kind);
  j["catalog"] = {{"source", ex.catalog.source_label()}, {"size", ex.catalog.size()}};
  j["baseline"] = {
      {"source", ex.baseline.label},
      {"length", ex.baseline.size()},
      {"sequence_digest", result.baseline.sequence_digest},
      {"status", to_string(result.baseline.status)},
      {"runs", result.baseline.runs},
      {"mean", json_number(result.baseline.mean)},
      {"sample_stddev", json_number(result.baseline.sample_stddev)},
  };
  j["search_space_log10"] = search_space_order(ex.catalog.size(), ex.baseline.size());

  ordered_json trials = ordered_json::array();
  for (const auto& t : result.trials) {
    ordered_json tj;
    tj["trial_index"] = t.trial_index;
    tj["seed"] = t.seed;
    tj["status"] = t.completed ? "completed" : "failed";
    if (t.completed) {
      tj["baseline_fitness"] = json_number(t.baseline_fitness);
      tj["best_fitness"] = json_number(t.best_fitness);
      tj["initial_best_fitness"] = json_number(t.initial_best_fitness);
      tj["percent_improvement"] = t.percent_improvement;
      tj["best_genome_length"] = t.best_individual.size();
      tj["best_sequence_length"] = t.best_sequence.size();
      tj["best_sequence_digest"] = sequence_digest(t.best_sequence);
      tj["generations"] = t.history.size();
    } else {
      tj["error"] = t.error;
    }
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);

  if (result.summary) {
    const auto& s = *result.summary;
    j["summary"] = {
        {"n", s.n},
        {"mean_improvement", s.mean_improvement},
        {"sample_stddev", s.sample_stddev},
        {"t_statistic", s.t_statistic},
        {"p_value_one_tailed", s.p_value_one_tailed},
        {"test", "one-tailed, H0: mean improvement = 0, H1: > 0"},
    };
  } else {
    j["summary"] = nullptr;
  }
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

void write_artifacts(const Experiment& ex, const ExperimentResult& result) {
  const auto& root = ex.config.output_dir;
  fs::create_directories(root);
  write_file(root / "config.ini", to_ini(ex.config));
  for (const auto& t : result.trials) {
    if (t.history.empty()) continue;
    const auto dir = root / ("trial_" + std::to_string(t.trial_index));
    fs::create_directories(dir);
    write_file(dir / "history.csv", history_csv(t.history));
    write_file(dir / "best_individual.patch", serialize_individual(t.best_individual));
    write_file(dir / "best_sequence.txt", to_text(t.best_sequence));
  }
  write_file(root / "summary.json", summary_json(ex, result));
}

std::vector<double> load_improvements(const fs::path& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kMalformedLine, "'" + path.string() + "': " + e.what());
    }
    if (!j.contains("trials") || !j["trials"].is_array()) {
      throw Error(ErrorKind::kMalformedLine, "'" + path.string() + "': no trials array");
    }
    std::vector<double> out;
    for (const auto& t : j["trials"]) {
      if (t.value("status", "") != "completed") continue;
      if (!t.contains("percent_improvement") || !t["percent_improvement"].is_number()) {
        throw Error(ErrorKind::kMalformedLine, "'" + path.string() + "': trial without percent_improvement");
      }
      out.push_back(t["percent_improvement"].get<double>());
    }
    return out;
  }

  std::vector<double> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string spaced(line);
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    for (auto field : split_fields(spaced)) {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || p != field.data() + field.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::kMalformedLine,
                    "line " + std::to_string(line_no) + ": not a number '" + std::string(field) + "'",
                    line_no);
      }
      out.push_back(v);
    }
  });
  return out;
}

}  // namespace passgi
