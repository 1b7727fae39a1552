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

#include "evolution.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"

namespace passgi {

namespace {

constexpr double kPositionPerturbationScale = 0.1;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kConfig, "ga: " + what);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

const PassName& random_pass(const PassCatalog& catalog, Rng& rng) {
  return catalog[static_cast<std::size_t>(rng.below(catalog.size()))];
}

}  // namespace

void GAConfig::validate() const {
  require(population_size >= 1, "population_size must be >= 1");
  require(generations >= 1, "generations must be >= 1");
  require(in_unit(crossover_rate), "crossover_rate must lie in [0, 1]");
  require(in_unit(mutation_rate), "mutation_rate must lie in [0, 1]");
  require(in_unit(per_gene_mutation_rate), "per_gene_mutation_rate must lie in [0, 1]");
  require(tournament_size >= 2, "tournament_size must be >= 2");
  require(elitism_count <= population_size, "elitism_count must not exceed population_size");
  require(init_genome_len_min >= 1, "init_genome_len_min must be >= 1");
  require(init_genome_len_min <= init_genome_len_max,
          "init_genome_len_min must not exceed init_genome_len_max");
  require(init_genome_len_max <= max_genome_len,
          "init_genome_len_max must not exceed max_genome_len");
}

Patch random_patch(const PassCatalog& catalog, Rng& rng) {
  const auto type = static_cast<PatchType>(rng.below(3));
  const double position = rng.uniform_closed();
  if (type == PatchType::kDeletion) return Patch::deletion(position);
  return Patch(type, position, random_pass(catalog, rng));
}

std::vector<Individual> init_population(const GAConfig& cfg, const PassCatalog& catalog, Rng& rng) {
  std::vector<Individual> population(cfg.population_size);
  for (auto& ind : population) {
    const auto len = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(cfg.init_genome_len_min),
                    static_cast<std::int64_t>(cfg.init_genome_len_max)));
    ind.patches.reserve(len);
    for (std::size_t i = 0; i < len; ++i) ind.patches.push_back(random_patch(catalog, rng));
  }
  return population;
}

std::size_t tournament_select(std::span<const FitnessValue> fitnesses, std::size_t k, Rng& rng) {
  if (fitnesses.empty()) throw Error(ErrorKind::kInvalidArgument, "tournament over empty population");
  std::size_t best = static_cast<std::size_t>(rng.below(fitnesses.size()));
  for (std::size_t i = 1; i < k; ++i) {
    const auto challenger = static_cast<std::size_t>(rng.below(fitnesses.size()));
    if (fitnesses[challenger] < fitnesses[best]) best = challenger;
  }
  return best;
}

std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b,
                                               std::size_t ca, std::size_t cb,
                                               std::size_t max_genome_len) {
  const auto& pa = a.patches;
  const auto& pb = b.patches;
  ca = std::min(ca, pa.size());
  cb = std::min(cb, pb.size());

  Individual first;
  first.patches.assign(pa.begin(), pa.begin() + static_cast<std::ptrdiff_t>(ca));
  first.patches.insert(first.patches.end(), pb.begin() + static_cast<std::ptrdiff_t>(cb), pb.end());

  Individual second;
  second.patches.assign(pb.begin(), pb.begin() + static_cast<std::ptrdiff_t>(cb));
  second.patches.insert(second.patches.end(), pa.begin() + static_cast<std::ptrdiff_t>(ca), pa.end());

  if (first.patches.size() > max_genome_len) {
    first.patches.erase(first.patches.begin() + static_cast<std::ptrdiff_t>(max_genome_len), first.patches.end());
  }
  if (second.patches.size() > max_genome_len) {
    second.patches.erase(second.patches.begin() + static_cast<std::ptrdiff_t>(max_genome_len), second.patches.end());
  }
  return {std::move(first), std::move(second)};
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            std::size_t max_genome_len, Rng& rng) {
  const auto ca = static_cast<std::size_t>(rng.below(a.size() + 1));
  const auto cb = static_cast<std::size_t>(rng.below(b.size() + 1));
  return crossover_at(a, b, ca, cb, max_genome_len);
}

namespace {

Patch mutate_gene(const Patch& gene, const PassCatalog& catalog, Rng& rng) {
  // Value resampling only applies to genes that carry a value.
  const std::uint64_t edits = gene.value() ? 3 : 2;
  switch (rng.below(edits)) {
    case 0: {
      const auto type = static_cast<PatchType>(rng.below(3));
      if (type == PatchType::kDeletion) return Patch::deletion(gene.position());
      if (gene.value()) return Patch(type, gene.position(), *gene.value());
      return Patch(type, gene.position(), random_pass(catalog, rng));
    }
    case 1: {
      const double moved = gene.position() + kPositionPerturbationScale * rng.normal();
      return Patch(gene.type(), std::clamp(moved, 0.0, 1.0), gene.value());
    }
    default:
      return Patch(gene.type(), gene.position(), random_pass(catalog, rng));
  }
}

}  // namespace

Individual mutate(const Individual& ind, const PassCatalog& catalog, const GAConfig& cfg, Rng& rng) {
  if (!rng.bernoulli(cfg.mutation_rate)) return ind;

  Individual out;
  out.patches.reserve(ind.size() + 1);
  for (const auto& gene : ind.patches) {
    out.patches.push_back(rng.bernoulli(cfg.per_gene_mutation_rate) ? mutate_gene(gene, catalog, rng)
                                                                     : gene);
  }

  if (rng.bernoulli(cfg.per_gene_mutation_rate)) {
    const bool can_grow = out.size() < cfg.max_genome_len;
    const bool can_shrink = !out.empty();
    bool grow = rng.bernoulli(0.5);
    if (grow && !can_grow) grow = false;
    if (!grow && !can_shrink) grow = can_grow;
    if (grow && can_grow) {
      out.patches.push_back(random_patch(catalog, rng));
    } else if (!grow && can_shrink) {
      out.patches.erase(out.patches.begin() + static_cast<std::ptrdiff_t>(rng.below(out.size())));
    }
  }
  if (out.size() > cfg.max_genome_len) {
    out.patches.erase(out.patches.begin() + static_cast<std::ptrdiff_t>(cfg.max_genome_len), out.patches.end());
  }
  return out;
}

namespace {

GenerationRecord summarize_generation(std::size_t generation, const std::vector<Individual>& population,
                                      const std::vector<FitnessValue>& fitnesses) {
  GenerationRecord record;
  record.generation = generation;
  std::size_t best = 0;
  double sum = 0.0;
  std::size_t measured = 0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    if (fitnesses[i] < fitnesses[best]) best = i;
    if (!fitnesses[i].is_penalty()) {
      sum += fitnesses[i].seconds();
      ++measured;
    }
  }
  record.best_fitness = fitnesses[best];
  record.best_individual = population[best];
  record.mean_fitness =
      measured ? sum / static_cast<double>(measured) : std::numeric_limits<double>::infinity();
  return record;
}

}  // namespace

EvolutionResult evolve(const GAConfig& cfg, const PassSequence& baseline, const PassCatalog& catalog,
                       const FitnessFn& fitness_fn, const GenerationObserver& observer) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  auto population = init_population(cfg, catalog, rng);

  EvolutionResult result;
  result.history.reserve(cfg.generations);
  bool have_best = false;

  for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
    std::vector<FitnessValue> fitnesses;
    fitnesses.reserve(population.size());
    for (const auto& ind : population) {
      fitnesses.push_back(fitness_fn(apply_individual(baseline, ind)));
    }

    auto record = summarize_generation(gen, population, fitnesses);
    if (!have_best || record.best_fitness < result.best_fitness) {
      result.best = record.best_individual;
      result.best_fitness = record.best_fitness;
      have_best = true;
    }
    if (observer) observer(record);
    result.history.push_back(std::move(record));

    if (gen + 1 == cfg.generations) break;

    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitnesses[a] < fitnesses[b]; });

    std::vector<Individual> next;
    next.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.elitism_count; ++i) next.push_back(population[order[i]]);

    while (next.size() < cfg.population_size) {
      const auto& mother = population[tournament_select(fitnesses, cfg.tournament_size, rng)];
      const auto& father = population[tournament_select(fitnesses, cfg.tournament_size, rng)];
      auto children = rng.bernoulli(cfg.crossover_rate)
                          ? crossover(mother, father, cfg.max_genome_len, rng)
                          : std::pair<Individual, Individual>{mother, father};
      next.push_back(mutate(children.first, catalog, cfg, rng));
      if (next.size() < cfg.population_size) {
        next.push_back(mutate(children.second, catalog, cfg, rng));
      }
    }
    population = std::move(next);
  }
  return result;
}

}  // namespace passgi
