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

// Acceptance suite. Prints one line per criterion:
//
//   passgi_acceptance                 run every criterion
//   passgi_acceptance --criterion N   run criterion N only
//
// Exit status is 0 when everything run passed, 77 when a single requested
// criterion was skipped, and 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "corpus.hpp"
#include "error.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "fitness.hpp"
#include "oracles.hpp"
#include "patch.hpp"
#include "process.hpp"
#include "stats.hpp"

namespace fs = std::filesystem;
using namespace passgi;

namespace {

// Tolerances and limits, one block per criterion.
constexpr double kC1MaxSeconds = 5.0;
constexpr double kC3MaxSeconds = 30.0;
constexpr double kC4MaxSeconds = 60.0;
constexpr double kC5T = 11.936;
constexpr double kC5TTol = 0.005;
constexpr double kC5P = 3.8e-6;
constexpr double kC5PTol = 0.5e-6;
constexpr double kC5OracleRelTol = 1e-6;
constexpr double kC6Order = 166.34;
constexpr double kC6Tol = 0.01;
constexpr double kC6RoundedExponent = 167.0;
constexpr double kC7Tol = 1e-12;
constexpr double kC8MaxSeconds = 120.0;
constexpr std::size_t kC8Runs = 5;
constexpr double kC9Timeout = 0.5;
constexpr double kC9MaxSeconds = 1.5;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("passgi-accept-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path source_dir() { return PASSGI_SOURCE_DIR; }

// 1. apply_individual against the naive interpreter.
Outcome criterion_1() {
  const auto start = Clock::now();
  const auto cases = corpus::make_corpus(corpus::kSeed, corpus::kCases);
  std::size_t mismatches = 0;
  for (const auto& c : cases) {
    const auto got = apply_individual(corpus::to_sequence(c.baseline), corpus::to_individual(c.edits));
    if (corpus::to_names(got) != oracle::interpret(c.baseline, c.edits)) ++mismatches;
  }
  const double secs = since(start);
  const bool ok = mismatches == 0 && secs < kC1MaxSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("%zu cases, %zu mismatches, %.3f s (limit %.0f s)", cases.size(), mismatches, secs, kC1MaxSeconds)};
}

// 2. Length algebra, closure and identity on the same corpus.
Outcome criterion_2() {
  const auto cases = corpus::make_corpus(corpus::kSeed, corpus::kCases);
  std::size_t violations = 0;
  std::size_t checks = 0;
  for (const auto& c : cases) {
    const auto baseline = corpus::to_sequence(c.baseline);
    auto current = baseline;
    std::set<std::string> allowed(c.baseline.begin(), c.baseline.end());
    for (const auto& e : c.edits) {
      const auto next = apply_patch(current, corpus::to_patch(e));
      std::size_t expect = current.size();
      if (e.op == oracle::Op::kInsert) expect = current.size() + 1;
      if (e.op == oracle::Op::kDelete) expect = current.empty() ? 0 : current.size() - 1;
      violations += next.size() == expect ? 0 : 1;
      ++checks;
      if (!e.value.empty()) allowed.insert(e.value);
      current = next;
    }
    for (const auto& p : apply_individual(baseline, corpus::to_individual(c.edits)).passes) {
      violations += allowed.count(p.str()) && corpus::catalog().contains(p.str()) ? 0 : 1;
      ++checks;
    }
    violations += apply_individual(baseline, Individual{}) == baseline ? 0 : 1;
    ++checks;
  }
  return {violations == 0 ? Verdict::kPass : Verdict::kFail,
          fmt("%zu checks over %zu cases, %zu violations", checks, cases.size(), violations)};
}

// 3. Two CLI runs with the same seeds produce identical files.
Outcome criterion_3() {
  TempDir dir("c3");
  const auto config = source_dir() / "data/configs/simulated.ini";
  const auto start = Clock::now();
  std::vector<fs::path> outs = {dir.path / "run_a", dir.path / "run_b"};
  for (const auto& out : outs) {
    const auto r = run_process({PASSGI_CLI, "evolve", "-c", config.string(), "--backend", "simulated",
                                "--output-dir", out.string(), "-q"},
                               kC3MaxSeconds);
    if (!r.succeeded()) return {Verdict::kFail, "cli run failed: " + r.describe() + "\n" + r.output};
  }
  const double secs = since(start);
  std::size_t compared = 0;
  std::size_t differing = 0;
  auto compare = [&](const fs::path& rel) {
    ++compared;
    const auto a = outs[0] / rel;
    const auto b = outs[1] / rel;
    if (!fs::exists(a) || !fs::exists(b) || slurp(a) != slurp(b)) ++differing;
  };
  compare("summary.json");
  for (std::size_t i = 0; fs::exists(outs[0] / ("trial_" + std::to_string(i))); ++i) {
    compare(fs::path("trial_" + std::to_string(i)) / "history.csv");
  }
  const bool ok = differing == 0 && compared > 1 && secs < kC3MaxSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("%zu files compared, %zu differ, %.2f s for both runs (limit %.0f s)", compared, differing, secs,
              kC3MaxSeconds)};
}

// 4. Evolution improves on the simulated landscape.
Outcome criterion_4() {
  TempDir dir("c4");
  auto cfg = load_experiment_config(source_dir() / "data/configs/simulated.ini");
  cfg.output_dir = dir.path / "out";
  cfg.backend.kind = BackendKind::kSimulated;
  const auto start = Clock::now();
  const auto ex = prepare_experiment(cfg);
  const std::size_t distance = levenshtein(ex.baseline.passes, ex.config.backend.sim.target.passes);
  const auto result = run_trials(ex);
  const double secs = since(start);

  // The fixed-seed run is the first configured trial; strict improvement is
  // required there, and every other trial must at least hold its ground.
  std::size_t regressed = 0;
  std::size_t monotone_violations = 0;
  double total = 0.0;
  for (const auto& t : result.trials) {
    if (!t.completed) return {Verdict::kFail, "trial failed: " + t.error};
    total += t.percent_improvement;
    regressed += t.best_fitness <= t.initial_best_fitness ? 0 : 1;
    double best_so_far = INFINITY;
    for (const auto& g : t.history) {
      const double v = g.best_fitness.as_double();
      best_so_far = std::min(best_so_far, v);
      monotone_violations += v <= best_so_far ? 0 : 1;
      // With elitism the generation best is itself non-increasing.
      if (g.generation > 0) {
        monotone_violations += v <= t.history[g.generation - 1].best_fitness.as_double() ? 0 : 1;
      }
    }
  }
  if (result.trials.empty()) return {Verdict::kFail, "no trials ran"};
  const auto& fixed = result.trials.front();
  const bool fixed_improved = fixed.best_fitness < fixed.initial_best_fitness;
  const double mean_improvement = total / static_cast<double>(result.trials.size());
  const bool setup_ok = distance == 2 && cfg.ga.population_size == 30 && cfg.ga.generations == 30 &&
                        cfg.ga.elitism_count == 1 && result.trials.size() == 4;
  const bool ok = setup_ok && fixed_improved && regressed == 0 && monotone_violations == 0 &&
                  mean_improvement > 0.0 && secs < kC4MaxSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("target distance %zu, seed %llu best %.6g s from initial %.6g s, %zu of %zu trials regressed, "
              "mean improvement %.4f %%, %zu monotonicity violations, %.2f s (limit %.0f s)",
              distance, static_cast<unsigned long long>(fixed.seed), fixed.best_fitness,
              fixed.initial_best_fitness, regressed, result.trials.size(), mean_improvement,
              monotone_violations, secs, kC4MaxSeconds)};
}

// 5. One-sample t-test on the eight-value sample.
Outcome criterion_5() {
  const auto values = oracle::eight_values(3.7, 0.8768);
  const auto s = summarize(values);
  const double t_oracle = 3.7 / (0.8768 / std::sqrt(8.0));
  const double p_oracle = oracle::t_upper_tail_quadrature(t_oracle, 7.0);
  const bool t_ok = std::abs(s.t_statistic - kC5T) <= kC5TTol;
  const bool p_ok = std::abs(s.p_value_one_tailed - kC5P) <= kC5PTol;
  const bool oracle_ok = std::abs(s.t_statistic - t_oracle) <= 1e-9 * t_oracle &&
                         std::abs(s.p_value_one_tailed - p_oracle) <= kC5OracleRelTol * p_oracle;
  const bool ok = t_ok && p_ok && oracle_ok;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("t = %.5f (want %.3f +/- %.3f: %s), p = %.6g (want %.1e +/- %.1e: %s), quadrature oracle "
              "p = %.6g (%s)",
              s.t_statistic, kC5T, kC5TTol, t_ok ? "ok" : "out", s.p_value_one_tailed, kC5P, kC5PTol,
              p_ok ? "ok" : "out", p_oracle, oracle_ok ? "agrees" : "disagrees")};
}

// 6. Search-space order for 120 passes and length 80.
Outcome criterion_6() {
  const double order = search_space_order(120, 80);
  const bool ok = std::abs(order - kC6Order) <= kC6Tol && std::abs(order - kC6RoundedExponent) <= 1.0;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("log10(120^80) = %.6f (want %.2f +/- %.2f, within 1 of %.0f)", order, kC6Order, kC6Tol,
              kC6RoundedExponent)};
}

// 7. Percent improvement arithmetic.
Outcome criterion_7() {
  const double v = percent_improvement(10.0, 9.63);
  const bool ok = std::abs(v - 3.7) <= kC7Tol;
  return {ok ? Verdict::kPass : Verdict::kFail, fmt("(10.0, 9.63) -> %.15f (tolerance %.0e)", v, kC7Tol)};
}

// Shared by both variants of criterion 8.
Outcome toolchain_smoke(const std::string& clang, const std::string& optimizer_command, const char* label) {
  TempDir dir("c8");
  const auto start = Clock::now();
  BackendConfig cfg;
  cfg.kind = BackendKind::kExternal;
  cfg.source_path = source_dir() / "data/samples/subset_sum.c";
  cfg.front_command = clang + " -O0 -Xclang -disable-O0-optnone -emit-llvm -c {source} -o {ir}";
  cfg.optimizer_command = optimizer_command;
  cfg.linker_command = clang + " {opt_ir} -o {output}";
  cfg.runs_per_eval = kC8Runs;
  cfg.run_timeout = 20.0;
  cfg.compile_timeout = 60.0;
  cfg.workdir = dir.path / "work";
  Evaluator ev(cfg, nullptr);

  const auto baseline = builtin_baseline();
  const Individual patch{{Patch::deletion(0.5), Patch::replacement(0.25, builtin_catalog()[0])}};
  const auto patched = apply_individual(baseline, patch);

  const auto a = ev.evaluate(baseline);
  const auto b = ev.evaluate(patched);
  if (a.status != EvalStatus::kOk) return {Verdict::kFail, "baseline: " + std::string(to_string(a.status)) + ": " + a.diagnostics};
  if (b.status != EvalStatus::kOk) return {Verdict::kFail, "patched: " + std::string(to_string(b.status)) + ": " + b.diagnostics};
  const bool same_output = !a.program_output.empty() && a.program_output == b.program_output;
  const bool runs_ok = a.runs == kC8Runs && b.runs == kC8Runs && a.samples.size() == kC8Runs &&
                       b.samples.size() == kC8Runs;

  auto broken = baseline;
  broken.passes.insert(broken.passes.begin() + 3, PassName("passgi-invalid-pass"));
  const auto c = ev.evaluate(broken);
  const bool broken_ok = c.status == EvalStatus::kCompileError && c.fitness().is_penalty();

  // An evolve loop whose candidates include the invalid token must finish.
  auto catalog_names = builtin_catalog().passes();
  catalog_names.emplace_back("passgi-invalid-pass");
  const PassCatalog noisy(catalog_names, "with invalid token");
  GAConfig ga;
  ga.population_size = 4;
  ga.generations = 2;
  ga.init_genome_len_min = 1;
  ga.init_genome_len_max = 2;
  ga.rng_seed = 8;
  std::size_t evals = 0;
  std::size_t penalties = 0;
  bool loop_ok = true;
  try {
    evolve(ga, baseline, noisy, [&](const PassSequence& s) {
      auto seq = s;
      // Force the invalid token into every other candidate.
      if (evals++ % 2 == 0) seq.passes.emplace_back("passgi-invalid-pass");
      const auto f = ev.fitness(seq);
      penalties += f.is_penalty() ? 1 : 0;
      return f;
    });
  } catch (const std::exception& e) {
    loop_ok = false;
  }
  loop_ok = loop_ok && penalties >= evals / 2;

  const double secs = since(start);
  const bool ok = same_output && runs_ok && broken_ok && loop_ok && secs < kC8MaxSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("%s: baseline %.4g s, patched %.4g s over %zu runs, output %s, invalid token -> %s, evolve loop "
              "%s (%zu evals, %zu penalized), %.1f s (limit %.0f s)",
              label, a.mean, b.mean, kC8Runs, same_output ? "identical" : "DIFFERS", to_string(c.status),
              loop_ok ? "completed" : "FAILED", evals, penalties, secs, kC8MaxSeconds)};
}

// 8. End-to-end smoke test against a real toolchain, when one is present.
Outcome criterion_8() {
  const std::string clang = PASSGI_CLANG;
  const std::string opt = PASSGI_OPT;
  if (!clang.empty() && !opt.empty()) {
    return toolchain_smoke(clang, opt + " {passes} {ir} -o {opt_ir}", "clang + opt");
  }
  if (clang.empty()) return {Verdict::kSkip, "no clang or opt found"};
  // No optimizer: check the same pipeline with a stand-in that validates
  // pass names, then report the criterion itself as skipped.
  TempDir dir("c8-standin");
  const auto catalog_file = dir.path / "catalog.txt";
  write_file(catalog_file, to_text(builtin_catalog()));
  const auto standin = toolchain_smoke(
      clang, std::string(PASSGI_FAKE_OPT) + " --catalog " + catalog_file.string() + " {passes} {ir} -o {opt_ir}",
      "clang + stand-in optimizer");
  if (standin.verdict == Verdict::kFail) return standin;
  return {Verdict::kSkip, "no opt found; " + standin.detail};
}

// 9. A non-halting program is stopped and penalized.
Outcome criterion_9() {
  TempDir dir("c9");
  const auto script = dir.path / "spin.sh";
  write_file(script, "#!/bin/sh\nexec " + std::string(PASSGI_SPIN_FIXTURE) + "\n");
  fs::permissions(script, fs::perms::owner_all, fs::perm_options::add);
  write_file(dir.path / "catalog.txt", "p0\n");

  BackendConfig cfg;
  cfg.kind = BackendKind::kExternal;
  cfg.source_path = script;
  cfg.front_command = "cp {source} {ir}";
  cfg.optimizer_command =
      std::string(PASSGI_FAKE_OPT) + " --catalog " + (dir.path / "catalog.txt").string() + " {passes} {ir} -o {opt_ir}";
  cfg.linker_command = "cp {opt_ir} {output}";
  cfg.runs_per_eval = 3;
  cfg.run_timeout = kC9Timeout;
  cfg.workdir = dir.path / "work";
  Evaluator ev(cfg, nullptr);
  PassSequence seq;
  seq.passes.emplace_back("p0");

  // Compile outside the timed window so only the run is measured.
  ev.evaluate(PassSequence{});
  const auto start = Clock::now();
  const auto r = ev.evaluate(seq);
  const double secs = since(start);
  const bool ok = r.status == EvalStatus::kTimeout && r.fitness().is_penalty() && secs <= kC9MaxSeconds;
  return {ok ? Verdict::kPass : Verdict::kFail,
          fmt("status %s, fitness %s, returned after %.3f s (timeout %.1f s, limit %.1f s)", to_string(r.status),
              r.fitness().is_penalty() ? "PENALTY" : "measured", secs, kC9Timeout, kC9MaxSeconds)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "patch semantics match the reference interpreter", criterion_1},
      {2, "length algebra and closure invariants", criterion_2},
      {3, "deterministic evolution through the CLI", criterion_3},
      {4, "improvement on the simulated landscape", criterion_4},
      {5, "t statistic and one-tailed p value", criterion_5},
      {6, "search-space order of magnitude", criterion_6},
      {7, "percent improvement arithmetic", criterion_7},
      {8, "external toolchain smoke test", criterion_8},
      {9, "timeout handling", criterion_9},
  };
  return all;
}

Verdict report(const Criterion& c) {
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {Verdict::kFail, std::string("exception: ") + e.what()};
  }
  const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
  std::printf("criterion %d: %s: %s: %s\n", c.id, tag, c.title, o.detail.c_str());
  std::fflush(stdout);
  return o.verdict;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  if (only) {
    for (const auto& c : criteria()) {
      if (c.id != only) continue;
      switch (report(c)) {
        case Verdict::kPass: return 0;
        case Verdict::kSkip: return 77;
        case Verdict::kFail: return 1;
      }
    }
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }

  bool failed = false;
  for (const auto& c : criteria()) failed = report(c) == Verdict::kFail || failed;
  return failed ? 1 : 0;
}
