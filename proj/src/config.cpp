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

// Experiment config file: INI sections [experiment], [ga], [backend] and
// [simulated].

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "error.hpp"
#include "experiment.hpp"
#include "text_lines.hpp"

namespace passgi {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::kConfig, what); }

std::string trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return std::string(s);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const std::string t = trim(text);
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || p != t.data() + t.size()) {
    config_error("'" + key + "': expected a number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  config_error("'" + key + "': expected a boolean, got '" + text + "'");
}

fs::path resolve(const fs::path& base, const std::string& text) {
  const fs::path p(trim(text));
  if (p.empty() || p == kBuiltinPath || p.is_absolute() || base.empty()) return p;
  return base / p;
}

std::vector<std::string> split_list(const std::string& text) {
  std::string spaced = text;
  for (auto& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::vector<std::string> out;
  for (auto f : split_fields(spaced)) out.emplace_back(f);
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

std::map<std::string, std::map<std::string, Setter>> make_schema(const fs::path& base) {
  std::map<std::string, std::map<std::string, Setter>> s;

  auto& e = s["experiment"];
  e["catalog"] = [base](auto& c, auto&, auto& v) { c.catalog_path = resolve(base, v); };
  e["baseline"] = [base](auto& c, auto&, auto& v) { c.baseline_path = resolve(base, v); };
  e["trials"] = [](auto& c, auto& k, auto& v) { c.trials = parse_number<std::size_t>(k, v); };
  e["output_dir"] = [base](auto& c, auto&, auto& v) { c.output_dir = resolve(base, v); };
  e["seeds"] = [](auto& c, auto& k, auto& v) {
    c.seeds.clear();
    for (const auto& item : split_list(v)) c.seeds.push_back(parse_number<std::uint64_t>(k, item));
  };
  e["remeasure_baseline"] = [](auto& c, auto& k, auto& v) { c.remeasure_baseline = parse_bool(k, v); };
  e["persist_cache"] = [](auto& c, auto& k, auto& v) { c.persist_cache = parse_bool(k, v); };
  e["workers"] = [](auto& c, auto& k, auto& v) { c.workers = parse_number<std::size_t>(k, v); };

  auto& g = s["ga"];
  g["population_size"] = [](auto& c, auto& k, auto& v) { c.ga.population_size = parse_number<std::size_t>(k, v); };
  g["generations"] = [](auto& c, auto& k, auto& v) { c.ga.generations = parse_number<std::size_t>(k, v); };
  g["crossover_rate"] = [](auto& c, auto& k, auto& v) { c.ga.crossover_rate = parse_number<double>(k, v); };
  g["mutation_rate"] = [](auto& c, auto& k, auto& v) { c.ga.mutation_rate = parse_number<double>(k, v); };
  g["per_gene_mutation_rate"] = [](auto& c, auto& k, auto& v) {
    c.ga.per_gene_mutation_rate = parse_number<double>(k, v);
  };
  g["tournament_size"] = [](auto& c, auto& k, auto& v) { c.ga.tournament_size = parse_number<std::size_t>(k, v); };
  g["elitism_count"] = [](auto& c, auto& k, auto& v) { c.ga.elitism_count = parse_number<std::size_t>(k, v); };
  g["init_genome_len_min"] = [](auto& c, auto& k, auto& v) {
    c.ga.init_genome_len_min = parse_number<std::size_t>(k, v);
  };
  g["init_genome_len_max"] = [](auto& c, auto& k, auto& v) {
    c.ga.init_genome_len_max = parse_number<std::size_t>(k, v);
  };
  g["max_genome_len"] = [](auto& c, auto& k, auto& v) { c.ga.max_genome_len = parse_number<std::size_t>(k, v); };
  g["seed"] = [](auto& c, auto& k, auto& v) { c.ga.rng_seed = parse_number<std::uint64_t>(k, v); };

  auto& b = s["backend"];
  b["kind"] = [](auto& c, auto& k, auto& v) {
    const auto t = trim(v);
    if (t == "external") {
      c.backend.kind = BackendKind::kExternal;
    } else if (t == "simulated") {
      c.backend.kind = BackendKind::kSimulated;
    } else {
      config_error("'" + k + "': expected 'external' or 'simulated', got '" + v + "'");
    }
  };
  b["source"] = [base](auto& c, auto&, auto& v) { c.backend.source_path = resolve(base, v); };
  b["front_command"] = [](auto& c, auto&, auto& v) { c.backend.front_command = trim(v); };
  b["optimizer_command"] = [](auto& c, auto&, auto& v) { c.backend.optimizer_command = trim(v); };
  b["linker_command"] = [](auto& c, auto&, auto& v) { c.backend.linker_command = trim(v); };
  b["pass_prefix"] = [](auto& c, auto&, auto& v) { c.backend.pass_prefix = trim(v); };
  b["runs_per_eval"] = [](auto& c, auto& k, auto& v) { c.backend.runs_per_eval = parse_number<std::size_t>(k, v); };
  b["run_timeout"] = [](auto& c, auto& k, auto& v) { c.backend.run_timeout = parse_number<double>(k, v); };
  b["compile_timeout"] = [](auto& c, auto& k, auto& v) { c.backend.compile_timeout = parse_number<double>(k, v); };
  b["program_args"] = [](auto& c, auto&, auto& v) {
    c.backend.program_args.clear();
    for (auto f : split_fields(v)) c.backend.program_args.emplace_back(f);
  };
  b["workdir"] = [base](auto& c, auto&, auto& v) { c.backend.workdir = resolve(base, v); };
  b["trim_fraction"] = [](auto& c, auto& k, auto& v) { c.backend.trim_fraction = parse_number<double>(k, v); };
  b["keep_artifacts"] = [](auto& c, auto& k, auto& v) { c.backend.keep_artifacts = parse_bool(k, v); };

  auto& m = s["simulated"];
  m["target"] = [base](auto& c, auto&, auto& v) { c.simulated_target_path = resolve(base, v); };
  m["base_runtime"] = [](auto& c, auto& k, auto& v) { c.backend.sim.base_runtime = parse_number<double>(k, v); };
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) config_error("experiment: trials must be >= 1");
  if (!seeds.empty() && seeds.size() != trials) {
    config_error("experiment: " + std::to_string(seeds.size()) + " seeds given for " +
                 std::to_string(trials) + " trials");
  }
  ga.validate();
  backend.validate();
}

ExperimentConfig parse_experiment_config(const std::string& text, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    config_error("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  const auto schema = make_schema(base_dir);
  ExperimentConfig cfg;
  for (const auto& [section, body] : tree) {
    const auto sit = schema.find(section);
    if (sit == schema.end()) {
      if (body.empty() && !body.data().empty()) config_error("config: key '" + section + "' outside of a section");
      config_error("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      const auto kit = sit->second.find(key);
      if (kit == sit->second.end()) config_error("config: unknown key '" + key + "' in [" + section + "]");
      kit->second(cfg, section + "." + key, value.data());
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error&) {
    config_error("cannot read config file '" + path.string() + "'");
  }
  return parse_experiment_config(text, path.parent_path());
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\n"
    << "catalog = " << c.catalog_path.string() << '\n'
    << "baseline = " << c.baseline_path.string() << '\n'
    << "trials = " << c.trials << '\n'
    << "output_dir = " << c.output_dir.string() << '\n';
  if (!c.seeds.empty()) {
    o << "seeds = ";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) o << (i ? "," : "") << c.seeds[i];
    o << '\n';
  }
  o << "remeasure_baseline = " << (c.remeasure_baseline ? "true" : "false") << '\n'
    << "persist_cache = " << (c.persist_cache ? "true" : "false") << '\n'
    << "workers = " << c.workers << "\n\n";

  const auto& g = c.ga;
  o << "[ga]\n"
    << "population_size = " << g.population_size << '\n'
    << "generations = " << g.generations << '\n'
    << "crossover_rate = " << format_double(g.crossover_rate) << '\n'
    << "mutation_rate = " << format_double(g.mutation_rate) << '\n'
    << "per_gene_mutation_rate = " << format_double(g.per_gene_mutation_rate) << '\n'
    << "tournament_size = " << g.tournament_size << '\n'
    << "elitism_count = " << g.elitism_count << '\n'
    << "init_genome_len_min = " << g.init_genome_len_min << '\n'
    << "init_genome_len_max = " << g.init_genome_len_max << '\n'
    << "max_genome_len = " << g.max_genome_len << '\n'
    << "seed = " << g.rng_seed << "\n\n";

  const auto& b = c.backend;
  o << "[backend]\n"
    << "kind = " << to_string(b.kind) << '\n';
  if (!b.source_path.empty()) o << "source = " << b.source_path.string() << '\n';
  o << "front_command = " << b.front_command << '\n'
    << "optimizer_command = " << b.optimizer_command << '\n'
    << "linker_command = " << b.linker_command << '\n'
    << "pass_prefix = " << b.pass_prefix << '\n'
    << "runs_per_eval = " << b.runs_per_eval << '\n'
    << "run_timeout = " << format_double(b.run_timeout) << '\n'
    << "compile_timeout = " << format_double(b.compile_timeout) << '\n';
  if (!b.program_args.empty()) {
    o << "program_args =";
    for (const auto& a : b.program_args) o << ' ' << a;
    o << '\n';
  }
  if (!b.workdir.empty()) o << "workdir = " << b.workdir.string() << '\n';
  o << "trim_fraction = " << format_double(b.trim_fraction) << '\n'
    << "keep_artifacts = " << (b.keep_artifacts ? "true" : "false") << "\n\n";

  o << "[simulated]\n";
  if (!c.simulated_target_path.empty()) o << "target = " << c.simulated_target_path.string() << '\n';
  o << "base_runtime = " << format_double(b.sim.base_runtime) << '\n';
  return o.str();
}

}  // namespace passgi
