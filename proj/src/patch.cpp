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

#include "patch.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "error.hpp"
#include "text_lines.hpp"

namespace passgi {

const char* to_string(PatchType type) {
  switch (type) {
    case PatchType::kInsertion: return "insert";
    case PatchType::kDeletion: return "delete";
    case PatchType::kReplacement: return "replace";
  }
  return "?";
}

Patch::Patch(PatchType type, double position, std::optional<PassName> value)
    : type_(type), position_(position), value_(std::move(value)) {
  if (!(position_ >= 0.0 && position_ <= 1.0)) {
    throw Error(ErrorKind::kPositionOutOfRange, "patch position outside [0, 1]");
  }
  const bool needs_value = type_ != PatchType::kDeletion;
  if (needs_value != value_.has_value()) {
    throw Error(ErrorKind::kInvalidArgument,
                needs_value ? "insert/replace patch requires a pass value"
                            : "delete patch must not carry a pass value");
  }
}

std::optional<std::size_t> resolve_index(double position, std::size_t length, SlotMode mode) {
  if (mode == SlotMode::kGap) {
    const auto slots = static_cast<double>(length + 1);
    const auto idx = static_cast<std::size_t>(std::floor(position * slots));
    return std::min(idx, length);
  }
  if (length == 0) return std::nullopt;
  const auto idx = static_cast<std::size_t>(std::floor(position * static_cast<double>(length)));
  return std::min(idx, length - 1);
}

PassSequence apply_patch(const PassSequence& seq, const Patch& patch) {
  PassSequence out = seq;
  switch (patch.type()) {
    case PatchType::kInsertion: {
      const auto idx = *resolve_index(patch.position(), out.size(), SlotMode::kGap);
      out.passes.insert(out.passes.begin() + static_cast<std::ptrdiff_t>(idx), *patch.value());
      break;
    }
    case PatchType::kDeletion: {
      if (const auto idx = resolve_index(patch.position(), out.size(), SlotMode::kElement)) {
        out.passes.erase(out.passes.begin() + static_cast<std::ptrdiff_t>(*idx));
      }
      break;
    }
    case PatchType::kReplacement: {
      if (const auto idx = resolve_index(patch.position(), out.size(), SlotMode::kElement)) {
        out.passes[*idx] = *patch.value();
      }
      break;
    }
  }
  return out;
}

PassSequence apply_individual(const PassSequence& baseline, const Individual& individual) {
  PassSequence out = baseline;
  for (const auto& patch : individual.patches) out = apply_patch(out, patch);
  return out;
}

namespace {

// At least six decimals, and always enough digits to read back the exact
// double.
std::string format_position(double position) {
  std::array<char, 512> buf{};  // fixed notation of denormals runs past 330 chars
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), position, std::chars_format::fixed, 6);
  std::string six(buf.data(), res.ptr);
  double back = 0.0;
  std::from_chars(six.data(), six.data() + six.size(), back);
  if (back == position) return six;

  res = std::to_chars(buf.data(), buf.data() + buf.size(), position, std::chars_format::fixed);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string serialize_patch(const Patch& patch) {
  std::string line = to_string(patch.type());
  line += ' ';
  line += format_position(patch.position());
  if (patch.value()) {
    line += ' ';
    line += patch.value()->str();
  }
  return line;
}

std::string serialize_individual(const Individual& individual) {
  std::string out;
  for (const auto& patch : individual.patches) {
    out += serialize_patch(patch);
    out += '\n';
  }
  return out;
}

Individual parse_individual(std::string_view text, const PassCatalog& catalog) {
  Individual ind;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') return;
    const auto where = "line " + std::to_string(line_no) + ": ";
    auto malformed = [&](const std::string& what) {
      return Error(ErrorKind::kMalformedPatchLine, where + what, line_no);
    };

    PatchType type;
    if (fields[0] == "insert") {
      type = PatchType::kInsertion;
    } else if (fields[0] == "delete") {
      type = PatchType::kDeletion;
    } else if (fields[0] == "replace") {
      type = PatchType::kReplacement;
    } else {
      throw malformed("unknown patch type '" + std::string(fields[0]) + "'");
    }
    const std::size_t expected = type == PatchType::kDeletion ? 2 : 3;
    if (fields.size() != expected) {
      throw malformed("expected " + std::to_string(expected) + " fields");
    }

    double position = 0.0;
    const auto pos_text = fields[1];
    const auto [ptr, ec] = std::from_chars(pos_text.data(), pos_text.data() + pos_text.size(), position);
    if (ec != std::errc{} || ptr != pos_text.data() + pos_text.size()) {
      throw malformed("bad position '" + std::string(pos_text) + "'");
    }
    if (!(position >= 0.0 && position <= 1.0)) {
      throw Error(ErrorKind::kPositionOutOfRange, where + "position outside [0, 1]", line_no);
    }

    std::optional<PassName> value;
    if (type != PatchType::kDeletion) {
      if (!catalog.contains(fields[2])) {
        throw Error(ErrorKind::kUnknownPass,
                    where + "unknown pass '" + std::string(fields[2]) + "'", line_no);
      }
      value.emplace(std::string(fields[2]));
    }
    ind.patches.emplace_back(type, position, std::move(value));
  });
  return ind;
}

Individual parse_individual_file(const std::filesystem::path& path, const PassCatalog& catalog) {
  return parse_individual(read_text_file(path), catalog);
}

bool valid_against(const Individual& individual, const PassCatalog& catalog) {
  return std::all_of(individual.patches.begin(), individual.patches.end(), [&](const Patch& p) {
    return !p.value() || catalog.contains(p.value()->str());
  });
}

}  // namespace passgi
