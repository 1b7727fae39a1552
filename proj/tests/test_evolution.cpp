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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "error.hpp"
#include "evolution.hpp"
#include "fitness.hpp"

using namespace passgi;

namespace {

// Seed 42, population 30, 30 generations: one edit away at the start (1 + 1/7),
// the target itself at the end.
constexpr double kFrozenInitialBest = 8.0 / 7.0;
constexpr double kFrozenFinalBest = 1.0;

const PassCatalog& six() {
  static const PassCatalog cat = load_catalog("p0\np1\np2\np3\np4\np5\n");
  return cat;
}

PassSequence seq(std::initializer_list<const char*> names) {
  PassSequence s;
  for (const char* n : names) s.passes.emplace_back(n);
  return s;
}

bool well_formed(const Individual& ind, std::size_t max_len) {
  if (ind.size() > max_len) return false;
  for (const auto& p : ind.patches) {
    if (!(p.position() >= 0.0 && p.position() <= 1.0)) return false;
    if (p.value().has_value() == (p.type() == PatchType::kDeletion)) return false;
    if (p.value() && !six().contains(p.value()->str())) return false;
  }
  return true;
}

std::vector<FitnessValue> measured(std::initializer_list<double> xs) {
  std::vector<FitnessValue> out;
  for (double x : xs) out.push_back(FitnessValue::measured(x));
  return out;
}

// Baseline and a hidden target two element edits away from it.
const PassSequence& landscape_baseline() {
  static const auto s = seq({"p0", "p1", "p2", "p3", "p4", "p5", "p0", "p1"});
  return s;
}
const PassSequence& landscape_target() {
  static const auto s = seq({"p0", "p1", "p5", "p3", "p4", "p5", "p0"});
  return s;
}

}  // namespace

TEST_CASE("GAConfig validation") {
  GAConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  auto bad = [](auto mutate_cfg) {
    GAConfig c;
    mutate_cfg(c);
    CHECK_THROWS_AS(c.validate(), Error);
  };
  bad([](GAConfig& c) { c.population_size = 0; });
  bad([](GAConfig& c) { c.generations = 0; });
  bad([](GAConfig& c) { c.crossover_rate = 1.5; });
  bad([](GAConfig& c) { c.mutation_rate = -0.1; });
  bad([](GAConfig& c) { c.per_gene_mutation_rate = 2.0; });
  bad([](GAConfig& c) { c.tournament_size = 1; });
  bad([](GAConfig& c) { c.elitism_count = 51; });
  bad([](GAConfig& c) { c.init_genome_len_min = 0; });
  bad([](GAConfig& c) { c.init_genome_len_min = 9; });
  bad([](GAConfig& c) { c.max_genome_len = 4; });
}

TEST_CASE("random_patch") {
  SUBCASE("single-pass catalog forces the value") {
    const auto one = load_catalog("a\n");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed);
      const auto p = random_patch(one, rng);
      if (p.type() != PatchType::kDeletion) CHECK(p.value()->str() == "a");
    }
  }
  SUBCASE("always well formed and covers all three types") {
    Rng rng(3);
    std::map<PatchType, int> seen;
    for (int i = 0; i < 3000; ++i) {
      const auto p = random_patch(six(), rng);
      CHECK(well_formed(Individual{{p}}, 1));
      ++seen[p.type()];
    }
    CHECK(seen.size() == 3);
    for (const auto& [type, n] : seen) CHECK(std::abs(n - 1000) < 150);
  }
  SUBCASE("replays under the same seed") {
    Rng a(11);
    Rng b(11);
    for (int i = 0; i < 100; ++i) CHECK(random_patch(six(), a) == random_patch(six(), b));
  }
}

TEST_CASE("init_population") {
  GAConfig cfg;
  cfg.population_size = 3;
  cfg.init_genome_len_min = 1;
  cfg.init_genome_len_max = 1;
  Rng rng(5);
  const auto pop = init_population(cfg, six(), rng);
  REQUIRE(pop.size() == 3);
  for (const auto& ind : pop) CHECK(ind.size() == 1);

  cfg.population_size = 200;
  cfg.init_genome_len_min = 2;
  cfg.init_genome_len_max = 6;
  Rng r1(9);
  Rng r2(9);
  const auto a = init_population(cfg, six(), r1);
  CHECK(a == init_population(cfg, six(), r2));
  std::size_t lo = 99;
  std::size_t hi = 0;
  for (const auto& ind : a) {
    CHECK(ind.size() >= 2);
    CHECK(ind.size() <= 6);
    CHECK(well_formed(ind, 6));
    lo = std::min(lo, ind.size());
    hi = std::max(hi, ind.size());
  }
  CHECK(lo == 2);
  CHECK(hi == 6);
}

TEST_CASE("tournament_select") {
  SUBCASE("population of one") {
    Rng rng(1);
    const auto f = measured({2.0});
    for (int i = 0; i < 10; ++i) CHECK(tournament_select(f, 3, rng) == 0);
  }
  SUBCASE("matches a replayed draw of k indices with earliest-wins ties") {
    const auto f = measured({3.0, 1.0, 2.0, 1.0, 5.0});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      Rng replay(seed);
      const std::size_t k = 2 + seed % 4;
      std::size_t expect = replay.below(f.size());
      for (std::size_t i = 1; i < k; ++i) {
        const auto j = replay.below(f.size());
        if (f[j] < f[expect]) expect = j;
      }
      CHECK(tournament_select(f, k, rng) == expect);
    }
  }
  SUBCASE("k covering every member returns the global best") {
    const auto f = measured({4.0, 3.0, 0.5, 2.0});
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng replay(seed);
      std::vector<bool> hit(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) hit[replay.below(f.size())] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
      ++covered;
      Rng rng(seed);
      CHECK(tournament_select(f, f.size(), rng) == 2);
    }
    CHECK(covered > 0);
  }
  SUBCASE("penalized members lose to any measurement") {
    std::vector<FitnessValue> f = {FitnessValue::penalty(), FitnessValue::measured(100.0)};
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
      const auto w = tournament_select(f, 8, rng);
      CHECK(w == 1);
    }
  }
}

TEST_CASE("crossover") {
  const auto p = Patch::deletion(0.1);
  const auto q = Patch::deletion(0.2);
  const auto r = Patch::deletion(0.3);
  SUBCASE("splice rule") {
    const auto [c1, c2] = crossover_at(Individual{{p, q}}, Individual{{r}}, 1, 0, 32);
    CHECK(c1 == Individual{{p, r}});
    CHECK(c2 == Individual{{q}});
  }
  SUBCASE("empty parents") {
    Rng rng(0);
    const auto [c1, c2] = crossover(Individual{}, Individual{}, 32, rng);
    CHECK(c1.empty());
    CHECK(c2.empty());
  }
  SUBCASE("conservation and truncation") {
    Rng rng(17);
    GAConfig cfg;
    cfg.population_size = 300;
    cfg.init_genome_len_min = 1;
    cfg.init_genome_len_max = 8;
    const auto pop = init_population(cfg, six(), rng);
    for (std::size_t i = 0; i + 1 < pop.size(); i += 2) {
      const auto [c1, c2] = crossover(pop[i], pop[i + 1], 64, rng);
      CHECK(c1.size() + c2.size() == pop[i].size() + pop[i + 1].size());
      std::vector<double> parents;
      std::vector<double> kids;
      for (const auto* ind : {&pop[i], &pop[i + 1]}) {
        for (const auto& g : ind->patches) parents.push_back(g.position());
      }
      for (const auto* ind : {&c1, &c2}) {
        for (const auto& g : ind->patches) kids.push_back(g.position());
      }
      std::sort(parents.begin(), parents.end());
      std::sort(kids.begin(), kids.end());
      CHECK(parents == kids);

      const auto [t1, t2] = crossover(pop[i], pop[i + 1], 3, rng);
      CHECK(t1.size() <= 3);
      CHECK(t2.size() <= 3);
    }
  }
}

TEST_CASE("mutate") {
  GAConfig cfg;
  Rng seed_rng(23);
  cfg.population_size = 100;
  const auto pop = init_population(cfg, six(), seed_rng);
  SUBCASE("rate zero is the identity") {
    cfg.mutation_rate = 0.0;
    Rng rng(1);
    for (const auto& ind : pop) CHECK(mutate(ind, six(), cfg, rng) == ind);
  }
  SUBCASE("output stays well formed and changes something") {
    cfg.mutation_rate = 1.0;
    cfg.per_gene_mutation_rate = 0.9;
    cfg.max_genome_len = 9;
    Rng rng(2);
    int changed = 0;
    for (int round = 0; round < 20; ++round) {
      for (const auto& ind : pop) {
        const auto out = mutate(ind, six(), cfg, rng);
        CHECK(well_formed(out, 9));
        changed += out == ind ? 0 : 1;
      }
    }
    CHECK(changed > 1500);
  }
  SUBCASE("empty genome can only grow") {
    cfg.mutation_rate = 1.0;
    cfg.per_gene_mutation_rate = 1.0;
    Rng rng(3);
    CHECK(mutate(Individual{}, six(), cfg, rng).size() == 1);
  }
  SUBCASE("deterministic under a fixed seed") {
    cfg.mutation_rate = 1.0;
    Rng a(4);
    Rng b(4);
    for (const auto& ind : pop) CHECK(mutate(ind, six(), cfg, a) == mutate(ind, six(), cfg, b));
  }
}

TEST_CASE("evolve degenerate loop returns the sole initial individual") {
  GAConfig cfg;
  cfg.population_size = 1;
  cfg.generations = 1;
  cfg.elitism_count = 1;
  cfg.rng_seed = 8;
  Rng replay(8);
  const auto initial = init_population(cfg, six(), replay);
  const auto result = evolve(cfg, landscape_baseline(), six(),
                             [](const PassSequence&) { return FitnessValue::measured(1.0); });
  CHECK(result.best == initial[0]);
  CHECK(result.history.size() == 1);
}

TEST_CASE("evolve calls fitness_fn exactly population_size times per generation") {
  GAConfig cfg;
  cfg.population_size = 7;
  cfg.generations = 5;
  std::size_t calls = 0;
  std::vector<std::size_t> per_gen;
  evolve(
      cfg, landscape_baseline(), six(),
      [&](const PassSequence& s) {
        ++calls;
        return FitnessValue::measured(1.0 + static_cast<double>(s.size()));
      },
      [&](const GenerationRecord&) { per_gen.push_back(calls); });
  CHECK(per_gen == std::vector<std::size_t>{7, 14, 21, 28, 35});
}

TEST_CASE("evolve on the simulated landscape") {
  SimModel model{landscape_target(), 1.0};
  REQUIRE(levenshtein(landscape_baseline().passes, landscape_target().passes) == 2);
  GAConfig cfg;
  cfg.population_size = 30;
  cfg.generations = 30;
  cfg.elitism_count = 1;
  cfg.rng_seed = 42;
  auto fn = [&](const PassSequence& s) { return simulated_fitness(s, model); };

  const auto a = evolve(cfg, landscape_baseline(), six(), fn);
  const auto b = evolve(cfg, landscape_baseline(), six(), fn);

  REQUIRE(a.history.size() == 30);
  CHECK(a.best == b.best);
  for (std::size_t g = 0; g < a.history.size(); ++g) {
    CHECK(a.history[g].best_fitness == b.history[g].best_fitness);
    CHECK(a.history[g].mean_fitness == b.history[g].mean_fitness);
    CHECK(a.history[g].best_individual == b.history[g].best_individual);
    CHECK(a.history[g].generation == g);
    CHECK(well_formed(a.history[g].best_individual, cfg.max_genome_len));
    if (g > 0) CHECK(a.history[g].best_fitness <= a.history[g - 1].best_fitness);
  }
  CHECK(a.best_fitness < a.history.front().best_fitness);
  CHECK(a.best_fitness == a.history.back().best_fitness);

  // Frozen outcome of this seeded run.
  CHECK(a.history.front().best_fitness.seconds() == doctest::Approx(kFrozenInitialBest));
  CHECK(a.best_fitness.seconds() == doctest::Approx(kFrozenFinalBest));
}

TEST_CASE("elitism zero still tracks the best ever seen") {
  SimModel model{landscape_target(), 1.0};
  GAConfig cfg;
  cfg.population_size = 10;
  cfg.generations = 15;
  cfg.elitism_count = 0;
  cfg.rng_seed = 3;
  const auto r = evolve(cfg, landscape_baseline(), six(),
                        [&](const PassSequence& s) { return simulated_fitness(s, model); });
  FitnessValue best = FitnessValue::penalty();
  for (const auto& rec : r.history) best = std::min(best, rec.best_fitness);
  CHECK(r.best_fitness == best);
}

TEST_CASE("all-penalty generations report an infinite mean") {
  GAConfig cfg;
  cfg.population_size = 4;
  cfg.generations = 2;
  const auto r = evolve(cfg, landscape_baseline(), six(),
                        [](const PassSequence&) { return FitnessValue::penalty(); });
  for (const auto& rec : r.history) {
    CHECK(rec.best_fitness.is_penalty());
    CHECK(std::isinf(rec.mean_fitness));
  }
  CHECK(r.best_fitness.is_penalty());
}
