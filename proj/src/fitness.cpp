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

#include "fitness.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "process.hpp"
#include "text_lines.hpp"

namespace passgi {

namespace fs = std::filesystem;

const char* to_string(BackendKind kind) {
  return kind == BackendKind::kExternal ? "external" : "simulated";
}

const char* to_string(EvalStatus status) {
  switch (status) {
    case EvalStatus::kOk: return "ok";
    case EvalStatus::kCompileError: return "compile_error";
    case EvalStatus::kRunError: return "run_error";
    case EvalStatus::kTimeout: return "timeout";
  }
  return "?";
}

std::optional<EvalStatus> parse_eval_status(std::string_view text) {
  for (auto s : {EvalStatus::kOk, EvalStatus::kCompileError, EvalStatus::kRunError, EvalStatus::kTimeout}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kConfig, "backend: " + what);
}

}  // namespace

void BackendConfig::validate() const {
  require(runs_per_eval >= 1, "runs_per_eval must be >= 1");
  require(run_timeout > 0.0, "run_timeout must be positive");
  require(compile_timeout > 0.0, "compile_timeout must be positive");
  require(trim_fraction >= 0.0 && trim_fraction < 0.5, "trim_fraction must lie in [0, 0.5)");
  if (kind == BackendKind::kSimulated) {
    require(std::isfinite(sim.base_runtime) && sim.base_runtime > 0.0,
            "simulated base_runtime must be positive");
  } else {
    require(!source_path.empty(), "external backend requires a source path");
    require(!front_command.empty() && !optimizer_command.empty() && !linker_command.empty(),
            "external backend requires front, optimizer and linker commands");
  }
}

std::string BackendConfig::fingerprint() const {
  std::ostringstream out;
  out << "kind=" << to_string(kind) << ";runs=" << runs_per_eval << ";trim=" << format_double(trim_fraction);
  if (kind == BackendKind::kSimulated) {
    out << ";base=" << format_double(sim.base_runtime) << ";target=" << sequence_digest(sim.target);
  } else {
    out << ";source=" << source_path.string() << ";front=" << front_command
        << ";opt=" << optimizer_command << ";link=" << linker_command << ";prefix=" << pass_prefix
        << ";timeout=" << format_double(run_timeout) << ";args=";
    for (const auto& a : program_args) out << a << '\x1f';
  }
  return out.str();
}

std::string sequence_digest(const PassSequence& seq) {
  std::uint64_t h = fnv1a("passgi-seq");
  for (const auto& p : seq.passes) {
    h = fnv1a(p.str(), h);
    h = fnv1a("\n", h);
  }
  return hex16(h);
}

std::size_t levenshtein(std::span<const PassName> a, std::span<const PassName> b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

FitnessValue simulated_fitness(const PassSequence& seq, const SimModel& model) {
  const double distance = static_cast<double>(levenshtein(seq.passes, model.target.passes));
  const double scale = static_cast<double>(std::max<std::size_t>(model.target.size(), 1));
  return FitnessValue::measured(model.base_runtime * (1.0 + distance / scale));
}

void summarize_samples(EvaluationRecord& record, double trim_fraction) {
  const auto& s = record.samples;
  if (s.empty()) return;
  const double n = static_cast<double>(s.size());

  double sum = 0.0;
  for (double x : s) sum += x;
  const double full_mean = sum / n;
  double ss = 0.0;
  for (double x : s) ss += (x - full_mean) * (x - full_mean);
  record.sample_stddev = s.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

  const auto drop = static_cast<std::size_t>(std::floor(trim_fraction * n));
  if (drop == 0 || 2 * drop >= s.size()) {
    record.mean = full_mean;
    return;
  }
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  double kept = 0.0;
  for (std::size_t i = drop; i < sorted.size() - drop; ++i) kept += sorted[i];
  record.mean = kept / static_cast<double>(sorted.size() - 2 * drop);
}

// --- FitnessCache ----------------------------------------------------------

namespace {

constexpr std::string_view kCacheHeader = "# passgi fitness cache v1 fingerprint=";

}  // namespace

FitnessCache::FitnessCache(fs::path path, std::string fingerprint) : path_(std::move(path)) {
  const std::string header = std::string(kCacheHeader) + hex16(fnv1a(fingerprint));
  bool reuse = false;
  if (fs::exists(path_)) {
    const std::string text = read_text_file(path_);
    reuse = text.starts_with(header + "\n");
    if (reuse) {
      for_each_line(text, [&](std::string_view line, std::size_t) {
        if (line.empty() || line.front() == '#') return;
        if (auto rec = parse(line)) records_.emplace(rec->sequence_digest, std::move(*rec));
      });
    }
  }
  if (!reuse) {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write fitness cache '" + path_.string() + "'");
    out << header << '\n';
  }
}

std::optional<EvaluationRecord> FitnessCache::find(const std::string& digest) const {
  std::lock_guard lock(mu_);
  const auto it = records_.find(digest);
  if (it == records_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

EvaluationRecord FitnessCache::insert(EvaluationRecord record) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = records_.emplace(record.sequence_digest, std::move(record));
  if (inserted && !path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    out << serialize(it->second) << '\n';
  }
  return it->second;
}

std::size_t FitnessCache::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::string FitnessCache::serialize(const EvaluationRecord& r) {
  std::string line = r.sequence_digest + '\t' + to_string(r.status) + '\t' + std::to_string(r.runs) +
                     '\t' + format_double(r.mean) + '\t' + format_double(r.sample_stddev) + '\t';
  if (r.samples.empty()) {
    line += '-';
  } else {
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      if (i) line += ',';
      line += format_double(r.samples[i]);
    }
  }
  return line;
}

std::optional<EvaluationRecord> FitnessCache::parse(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (cols.size() != 6) return std::nullopt;

  auto to_double = [](std::string_view s, double& out) {
    // from_chars for double does not accept a leading '+', which we never write.
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };

  EvaluationRecord r;
  r.sequence_digest = std::string(cols[0]);
  const auto status = parse_eval_status(cols[1]);
  if (!status) return std::nullopt;
  r.status = *status;
  const auto [p, ec] = std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), r.runs);
  if (ec != std::errc{} || !to_double(cols[3], r.mean) || !to_double(cols[4], r.sample_stddev)) {
    return std::nullopt;
  }
  if (cols[5] != "-") {
    std::size_t s = 0;
    while (s <= cols[5].size()) {
      const auto comma = cols[5].find(',', s);
      double v = 0.0;
      if (!to_double(cols[5].substr(s, comma - s), v)) return std::nullopt;
      r.samples.push_back(v);
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
  }
  if (r.status == EvalStatus::kOk && (r.samples.size() != r.runs || !(r.mean > 0.0))) return std::nullopt;
  return r;
}

// --- Evaluator -------------------------------------------------------------

std::vector<std::string> expand_command(const std::string& templ,
                                        const std::map<std::string, std::string>& vars,
                                        const PassSequence& passes, const std::string& pass_prefix) {
  std::string csv;
  for (std::size_t i = 0; i < passes.size(); ++i) {
    if (i) csv += ',';
    csv += passes.passes[i].str();
  }

  std::vector<std::string> argv;
  for (auto field : split_fields(templ)) {
    if (field == "{passes}") {
      for (const auto& p : passes.passes) argv.push_back(pass_prefix + p.str());
      continue;
    }
    std::string token(field);
    auto substitute = [&](const std::string& key, const std::string& value) {
      const std::string needle = "{" + key + "}";
      for (auto pos = token.find(needle); pos != std::string::npos;
           pos = token.find(needle, pos + value.size())) {
        token.replace(pos, needle.size(), value);
      }
    };
    for (const auto& [key, value] : vars) substitute(key, value);
    substitute("passes_csv", csv);
    argv.push_back(std::move(token));
  }
  return argv;
}

Evaluator::Evaluator(BackendConfig cfg, std::shared_ptr<FitnessCache> cache)
    : cfg_(std::move(cfg)), cache_(cache ? std::move(cache) : std::make_shared<FitnessCache>()) {
  cfg_.validate();
  if (cfg_.kind == BackendKind::kExternal) {
    if (cfg_.workdir.empty()) {
      cfg_.workdir = fs::temp_directory_path() / ("passgi-" + std::to_string(::getpid()));
    }
    cfg_.workdir = fs::absolute(cfg_.workdir);
    cfg_.source_path = fs::absolute(cfg_.source_path);
  }
}

EvaluationRecord Evaluator::evaluate(const PassSequence& seq) {
  const auto digest = sequence_digest(seq);
  if (auto hit = cache_->find(digest)) return *hit;
  ++backend_evaluations_;
  auto record = cfg_.kind == BackendKind::kSimulated ? run_simulated(seq, digest)
                                                     : run_external(seq, digest);
  return cache_->insert(std::move(record));
}

EvaluationRecord Evaluator::run_simulated(const PassSequence& seq, const std::string& digest) const {
  EvaluationRecord r;
  r.sequence_digest = digest;
  r.runs = cfg_.runs_per_eval;
  const double value = simulated_fitness(seq, cfg_.sim).seconds();
  r.samples.assign(r.runs, value);
  r.mean = value;
  r.sample_stddev = 0.0;
  r.status = EvalStatus::kOk;
  return r;
}

std::optional<std::string> Evaluator::ensure_front_end() {
  std::lock_guard lock(front_mu_);
  if (front_done_) return front_error_;
  front_done_ = true;

  std::error_code ec;
  fs::create_directories(cfg_.workdir, ec);
  if (ec) {
    front_error_ = "cannot create workdir '" + cfg_.workdir.string() + "': " + ec.message();
    return front_error_;
  }
  ir_path_ = cfg_.workdir / "source.bc";
  const auto argv = expand_command(cfg_.front_command,
                                   {{"source", cfg_.source_path.string()}, {"ir", ir_path_.string()}},
                                   PassSequence{}, cfg_.pass_prefix);
  const auto proc = run_process(argv, cfg_.compile_timeout, cfg_.workdir);
  if (!proc.succeeded()) {
    front_error_ = "front-end failed (" + proc.describe() + ")\n" + proc.output;
  }
  return front_error_;
}

EvaluationRecord Evaluator::run_external(const PassSequence& seq, const std::string& digest) {
  EvaluationRecord r;
  r.sequence_digest = digest;
  r.runs = cfg_.runs_per_eval;

  if (auto err = ensure_front_end()) {
    r.status = EvalStatus::kCompileError;
    r.diagnostics = *err;
    return r;
  }

  static std::atomic<std::uint64_t> counter{0};
  const fs::path dir = cfg_.workdir / ("cand-" + digest + "-" + std::to_string(counter++));
  fs::create_directories(dir);
  const std::map<std::string, std::string> vars = {
      {"source", cfg_.source_path.string()},
      {"ir", ir_path_.string()},
      {"opt_ir", (dir / "opt.bc").string()},
      {"output", (dir / "prog").string()},
  };

  auto cleanup = [&] {
    if (!cfg_.keep_artifacts) {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  };

  for (const auto* templ : {&cfg_.optimizer_command, &cfg_.linker_command}) {
    const auto proc = run_process(expand_command(*templ, vars, seq, cfg_.pass_prefix),
                                  cfg_.compile_timeout, dir);
    if (!proc.succeeded()) {
      r.status = EvalStatus::kCompileError;
      r.diagnostics = (templ == &cfg_.optimizer_command ? "optimizer failed (" : "linker failed (") +
                      proc.describe() + ")\n" + proc.output;
      cleanup();
      return r;
    }
  }

  const fs::path exe = dir / "prog";
  for (std::size_t i = 0; i < cfg_.runs_per_eval; ++i) {
    auto run = time_execution(exe, cfg_.program_args, cfg_.run_timeout, dir);
    if (run.status != RunStatus::kOk) {
      r.status = run.status == RunStatus::kTimeout ? EvalStatus::kTimeout : EvalStatus::kRunError;
      r.diagnostics = "run " + std::to_string(i + 1) + ": " + run.diagnostics;
      r.samples.clear();
      cleanup();
      return r;
    }
    if (i == 0) r.program_output = std::move(run.output);
    // A zero reading would not be a valid fitness; clamp to clock resolution.
    r.samples.push_back(std::max(run.seconds, 1e-9));
  }
  summarize_samples(r, cfg_.trim_fraction);
  r.status = EvalStatus::kOk;
  cleanup();
  return r;
}

EvaluationRecord evaluate(const PassSequence& seq, const BackendConfig& cfg,
                          std::shared_ptr<FitnessCache> cache) {
  Evaluator evaluator(cfg, std::move(cache));
  return evaluator.evaluate(seq);
}

}  // namespace passgi
