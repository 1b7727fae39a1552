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

#ifndef PASSGI_EVOLUTION_HPP_
#define PASSGI_EVOLUTION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fitness_value.hpp"
#include "pass_catalog.hpp"
#include "patch.hpp"
#include "rng.hpp"

namespace passgi {

// Generational GA knobs. The defaults are a plain, reproducible baseline and
// are not tuned for any particular program.
struct GAConfig {
  std::size_t population_size = 50;
  std::size_t generations = 25;
  double crossover_rate = 0.9;
  double mutation_rate = 0.3;
  double per_gene_mutation_rate = 0.2;
  std::size_t tournament_size = 2;
  std::size_t elitism_count = 1;
  std::size_t init_genome_len_min = 1;
  std::size_t init_genome_len_max = 8;
  std::size_t max_genome_len = 32;
  std::uint64_t rng_seed = 0;

  // Throws kConfig naming the first violated constraint.
  void validate() const;
};

struct GenerationRecord {
  std::size_t generation = 0;
  FitnessValue best_fitness = FitnessValue::penalty();
  // Mean over non-penalty members; +inf when every member was penalized.
  double mean_fitness = 0.0;
  Individual best_individual;
};

using EvolutionHistory = std::vector<GenerationRecord>;

struct EvolutionResult {
  Individual best;
  FitnessValue best_fitness = FitnessValue::penalty();
  EvolutionHistory history;
};

using FitnessFn = std::function<FitnessValue(const PassSequence&)>;
using GenerationObserver = std::function<void(const GenerationRecord&)>;

Patch random_patch(const PassCatalog& catalog, Rng& rng);

std::vector<Individual> init_population(const GAConfig& cfg, const PassCatalog& catalog, Rng& rng);

// Samples k members with replacement and returns the index of the fittest;
// ties go to the earliest draw.
std::size_t tournament_select(std::span<const FitnessValue> fitnesses, std::size_t k, Rng& rng);

// One-point crossover at explicit cut points ca in [0, |a|] and cb in [0, |b|].
std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b,
                                               std::size_t ca, std::size_t cb,
                                               std::size_t max_genome_len);

// One-point crossover with uniformly drawn cut points.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            std::size_t max_genome_len, Rng& rng);

Individual mutate(const Individual& ind, const PassCatalog& catalog, const GAConfig& cfg, Rng& rng);

// Runs cfg.generations generations and returns the best individual ever
// evaluated together with one history record per generation. fitness_fn is
// called exactly once per population member per generation.
EvolutionResult evolve(const GAConfig& cfg, const PassSequence& baseline,
                       const PassCatalog& catalog, const FitnessFn& fitness_fn,
                       const GenerationObserver& observer = {});

}  // namespace passgi

#endif  // PASSGI_EVOLUTION_HPP_
