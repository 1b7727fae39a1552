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

#ifndef PASSGI_FITNESS_HPP_
#define PASSGI_FITNESS_HPP_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fitness_value.hpp"
#include "pass_catalog.hpp"

namespace passgi {

enum class BackendKind { kExternal, kSimulated };
enum class EvalStatus { kOk, kCompileError, kRunError, kTimeout };

const char* to_string(BackendKind kind);
const char* to_string(EvalStatus status);
std::optional<EvalStatus> parse_eval_status(std::string_view text);

struct EvaluationRecord {
  std::string sequence_digest;
  std::size_t runs = 0;
  std::vector<double> samples;
  double mean = 0.0;
  double sample_stddev = 0.0;
  EvalStatus status = EvalStatus::kOk;
  std::string diagnostics;
  // Output of the first timed run; empty for the simulated backend.
  std::string program_output;

  FitnessValue fitness() const {
    return status == EvalStatus::kOk ? FitnessValue::measured(mean) : FitnessValue::penalty();
  }
};

// Hidden-target landscape: fitness grows with edit distance to `target`.
struct SimModel {
  PassSequence target;
  double base_runtime = 1.0;
};

// Everything needed to turn a pass sequence into a fitness record.
//
// Command templates are split on whitespace; each token may contain the
// placeholders {source}, {ir}, {opt_ir}, {output} and {passes_csv}. A token
// that is exactly {passes} expands to one `pass_prefix + name` argument per
// pass, in sequence order.
struct BackendConfig {
  BackendKind kind = BackendKind::kSimulated;

  std::filesystem::path source_path;
  std::string front_command = "clang -O0 -Xclang -disable-O0-optnone -emit-llvm -c {source} -o {ir}";
  std::string optimizer_command = "opt {passes} {ir} -o {opt_ir}";
  std::string linker_command = "clang {opt_ir} -o {output}";
  std::string pass_prefix = "-";
  std::size_t runs_per_eval = 40;
  double run_timeout = 10.0;
  double compile_timeout = 60.0;
  std::vector<std::string> program_args;
  std::filesystem::path workdir;
  // Fraction of samples dropped from each end before averaging; 0 keeps the
  // plain mean of all runs.
  double trim_fraction = 0.0;
  bool keep_artifacts = false;

  SimModel sim;

  // Throws kConfig.
  void validate() const;
  // Stable text identifying every setting that affects fitness.
  std::string fingerprint() const;
};

// Order-sensitive FNV-1a over the token list, as 16 hex digits.
std::string sequence_digest(const PassSequence& seq);

// Element-level edit distance (unit cost insert, delete, substitute).
std::size_t levenshtein(std::span<const PassName> a, std::span<const PassName> b);

FitnessValue simulated_fitness(const PassSequence& seq, const SimModel& model);

// Mean and sample standard deviation of runtime samples, honoring trim_fraction.
void summarize_samples(EvaluationRecord& record, double trim_fraction);

// Digest-keyed store of evaluation records. First writer wins; records never
// change once stored. Optionally mirrored to a line-delimited file so an
// interrupted experiment resumes without re-measuring.
class FitnessCache {
 public:
  FitnessCache() = default;

  // Loads `path` when it exists and was written for the same backend
  // fingerprint, then appends every new record to it.
  FitnessCache(std::filesystem::path path, std::string fingerprint);

  std::optional<EvaluationRecord> find(const std::string& digest) const;
  // Returns the stored record, which is `record` unless another writer got
  // there first.
  EvaluationRecord insert(EvaluationRecord record);

  std::size_t size() const;
  std::size_t hits() const { return hits_.load(); }

  static std::string serialize(const EvaluationRecord& record);
  static std::optional<EvaluationRecord> parse(std::string_view line);

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, EvaluationRecord> records_;
  std::filesystem::path path_;
  mutable std::atomic<std::size_t> hits_{0};
};

// Runs the configured backend behind a cache.
class Evaluator {
 public:
  Evaluator(BackendConfig cfg, std::shared_ptr<FitnessCache> cache);

  EvaluationRecord evaluate(const PassSequence& seq);
  FitnessValue fitness(const PassSequence& seq) { return evaluate(seq).fitness(); }

  const BackendConfig& config() const { return cfg_; }
  FitnessCache& cache() { return *cache_; }
  // Number of uncached evaluations, i.e. backend pipeline executions.
  std::size_t backend_evaluations() const { return backend_evaluations_.load(); }

 private:
  EvaluationRecord run_external(const PassSequence& seq, const std::string& digest);
  EvaluationRecord run_simulated(const PassSequence& seq, const std::string& digest) const;
  // Compiles the source to IR once; the IR is shared by every candidate.
  std::optional<std::string> ensure_front_end();

  BackendConfig cfg_;
  std::shared_ptr<FitnessCache> cache_;
  std::atomic<std::size_t> backend_evaluations_{0};

  std::mutex front_mu_;
  bool front_done_ = false;
  std::optional<std::string> front_error_;
  std::filesystem::path ir_path_;
};

// evaluate(seq, cfg, cache) as a one-shot call.
EvaluationRecord evaluate(const PassSequence& seq, const BackendConfig& cfg,
                          std::shared_ptr<FitnessCache> cache);

// Expands one command template into argv.
std::vector<std::string> expand_command(const std::string& templ,
                                        const std::map<std::string, std::string>& vars,
                                        const PassSequence& passes, const std::string& pass_prefix);

}  // namespace passgi

#endif  // PASSGI_FITNESS_HPP_
