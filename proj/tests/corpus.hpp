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

// Seeded random (baseline, individual) pairs over a six-pass catalog, shared
// by the patch unit tests and the acceptance suite.

#ifndef PASSGI_TESTS_CORPUS_HPP_
#define PASSGI_TESTS_CORPUS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pass_catalog.hpp"
#include "patch.hpp"

namespace corpus {

inline const std::vector<std::string>& pass_names() {
  static const std::vector<std::string> names = {"p0", "p1", "p2", "p3", "p4", "p5"};
  return names;
}

inline const passgi::PassCatalog& catalog() {
  static const passgi::PassCatalog cat = passgi::load_catalog("p0\np1\np2\np3\np4\np5\n", "corpus");
  return cat;
}

struct Case {
  std::vector<std::string> baseline;
  std::vector<oracle::Edit> edits;
};

// A quarter of the positions sit on exact slot boundaries so the clamping
// paths get exercised as often as the interior.
inline double draw_position(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> kind(0, 7);
  switch (kind(gen)) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: {
      std::uniform_int_distribution<int> num(0, 12);
      std::uniform_int_distribution<int> den(1, 12);
      const int d = den(gen);
      const int n = num(gen) % (d + 1);
      return static_cast<double>(n) / d;
    }
    default: return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
  }
}

inline Case make_case(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> base_len(0, 10);
  std::uniform_int_distribution<int> genome_len(0, 8);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> op(0, 2);
  Case c;
  for (int i = base_len(gen); i > 0; --i) c.baseline.push_back(pass_names()[pick(gen)]);
  for (int i = genome_len(gen); i > 0; --i) {
    oracle::Edit e{static_cast<oracle::Op>(op(gen)), draw_position(gen), {}};
    if (e.op != oracle::Op::kDelete) e.value = pass_names()[pick(gen)];
    c.edits.push_back(e);
  }
  return c;
}

inline std::vector<Case> make_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<Case> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(make_case(gen));
  return out;
}

inline passgi::PassSequence to_sequence(const std::vector<std::string>& names) {
  passgi::PassSequence s;
  for (const auto& n : names) s.passes.emplace_back(n);
  return s;
}

inline std::vector<std::string> to_names(const passgi::PassSequence& s) {
  std::vector<std::string> out;
  for (const auto& p : s.passes) out.push_back(p.str());
  return out;
}

inline passgi::Patch to_patch(const oracle::Edit& e) {
  using passgi::Patch;
  using passgi::PassName;
  switch (e.op) {
    case oracle::Op::kInsert: return Patch::insertion(e.pos, PassName(e.value));
    case oracle::Op::kDelete: return Patch::deletion(e.pos);
    case oracle::Op::kReplace: return Patch::replacement(e.pos, PassName(e.value));
  }
  return Patch::deletion(e.pos);
}

inline passgi::Individual to_individual(const std::vector<oracle::Edit>& edits) {
  passgi::Individual ind;
  for (const auto& e : edits) ind.patches.push_back(to_patch(e));
  return ind;
}

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kCases = 10000;

}  // namespace corpus

#endif  // PASSGI_TESTS_CORPUS_HPP_
