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

#ifndef PASSGI_PATCH_HPP_
#define PASSGI_PATCH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pass_catalog.hpp"

namespace passgi {

enum class PatchType { kInsertion, kDeletion, kReplacement };

const char* to_string(PatchType type);

// One edit of a pass sequence. The position is relative to the sequence the
// patch is applied to, so the same patch stays meaningful as lengths change.
class Patch {
 public:
  // Throws kPositionOutOfRange when position is outside [0, 1] (or NaN) and
  // kInvalidArgument when the value presence does not match the type.
  Patch(PatchType type, double position, std::optional<PassName> value = std::nullopt);

  static Patch insertion(double position, PassName value) {
    return Patch(PatchType::kInsertion, position, std::move(value));
  }
  static Patch deletion(double position) { return Patch(PatchType::kDeletion, position); }
  static Patch replacement(double position, PassName value) {
    return Patch(PatchType::kReplacement, position, std::move(value));
  }

  PatchType type() const noexcept { return type_; }
  double position() const noexcept { return position_; }
  const std::optional<PassName>& value() const noexcept { return value_; }

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  PatchType type_;
  double position_;
  std::optional<PassName> value_;
};

// A genome: patches in application order. Empty is the identity.
struct Individual {
  std::vector<Patch> patches;

  std::size_t size() const noexcept { return patches.size(); }
  bool empty() const noexcept { return patches.empty(); }

  friend bool operator==(const Individual&, const Individual&) = default;
};

enum class SlotMode {
  kElement,  // the `length` existing elements (deletion, replacement)
  kGap,      // the `length + 1` gaps between and around them (insertion)
};

// Maps a relative position onto an index by floor scaling with clamping.
// Returns nullopt only in element mode over an empty sequence.
std::optional<std::size_t> resolve_index(double position, std::size_t length, SlotMode mode);

// Total: deletion or replacement on an empty sequence returns it unchanged.
PassSequence apply_patch(const PassSequence& seq, const Patch& patch);

// Left fold of apply_patch in genome order; every position is resolved
// against the sequence produced by the patches before it.
PassSequence apply_individual(const PassSequence& baseline, const Individual& individual);

// Line format: `insert <pos> <pass>` | `delete <pos>` | `replace <pos> <pass>`.
std::string serialize_patch(const Patch& patch);
std::string serialize_individual(const Individual& individual);

// Throws kMalformedPatchLine, kUnknownPass or kPositionOutOfRange with the
// offending line number. '#' comments and blank lines are ignored.
Individual parse_individual(std::string_view text, const PassCatalog& catalog);
Individual parse_individual_file(const std::filesystem::path& path, const PassCatalog& catalog);

// True when every patch value is a catalog member.
bool valid_against(const Individual& individual, const PassCatalog& catalog);

}  // namespace passgi

#endif  // PASSGI_PATCH_HPP_
