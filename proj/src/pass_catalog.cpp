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

#include "pass_catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "error.hpp"
#include "text_lines.hpp"

namespace passgi {

extern const char kBuiltinCatalogText[];
extern const char kBuiltinBaselineText[];

bool is_valid_pass_token(std::string_view token) noexcept {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (c <= 0x20 || c == 0x7f) return false;
  }
  return true;
}

PassName::PassName(std::string token) : token_(std::move(token)) {
  if (!is_valid_pass_token(token_)) {
    throw Error(ErrorKind::kInvalidPassName, "invalid pass name '" + token_ + "'");
  }
}

PassCatalog::PassCatalog(std::vector<PassName> passes, std::string source_label)
    : passes_(std::move(passes)), source_label_(std::move(source_label)) {
  if (passes_.empty()) throw Error(ErrorKind::kEmptyCatalog, "pass catalog is empty");
  index_.reserve(passes_.size());
  for (std::size_t i = 0; i < passes_.size(); ++i) {
    if (!index_.emplace(passes_[i].str(), i).second) {
      throw Error(ErrorKind::kDuplicatePass, "duplicate pass '" + passes_[i].str() + "'", i + 1);
    }
  }
}

bool PassCatalog::contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

namespace {

// Visits every significant line as a single validated token.
template <typename Fn>
void for_each_pass_token(std::string_view text, Fn&& fn) {
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') return;
    if (fields.size() != 1) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line_no) + ": expected one pass token", line_no);
    }
    if (!is_valid_pass_token(fields.front())) {
      throw Error(ErrorKind::kMalformedLine,
                  "line " + std::to_string(line_no) + ": invalid pass token", line_no);
    }
    fn(fields.front(), line_no);
  });
}

}  // namespace

PassCatalog load_catalog(std::string_view text, std::string source_label) {
  std::vector<PassName> passes;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_pass_token(text, [&](std::string_view token, std::size_t line_no) {
    if (!seen.emplace(std::string(token), line_no).second) {
      throw Error(ErrorKind::kDuplicatePass,
                  "line " + std::to_string(line_no) + ": duplicate pass '" + std::string(token) + "'",
                  line_no);
    }
    passes.emplace_back(std::string(token));
  });
  return PassCatalog(std::move(passes), std::move(source_label));
}

PassSequence load_sequence(std::string_view text, const PassCatalog& catalog, std::string label) {
  PassSequence seq;
  seq.label = std::move(label);
  for_each_pass_token(text, [&](std::string_view token, std::size_t line_no) {
    if (!catalog.contains(token)) {
      throw Error(ErrorKind::kUnknownPass,
                  "line " + std::to_string(line_no) + ": unknown pass '" + std::string(token) + "'",
                  line_no);
    }
    seq.passes.emplace_back(std::string(token));
  });
  return seq;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PassCatalog load_catalog_file(const std::filesystem::path& path) {
  return load_catalog(read_text_file(path), path.string());
}

PassSequence load_sequence_file(const std::filesystem::path& path, const PassCatalog& catalog) {
  return load_sequence(read_text_file(path), catalog, path.string());
}

const PassCatalog& builtin_catalog() {
  static const PassCatalog catalog = load_catalog(kBuiltinCatalogText, "legacy -O3 snapshot");
  return catalog;
}

PassSequence builtin_baseline() {
  return load_sequence(kBuiltinBaselineText, builtin_catalog(), "legacy -O3 snapshot");
}

std::string to_text(const PassCatalog& catalog) {
  std::string out;
  for (const auto& p : catalog.passes()) out += p.str() + '\n';
  return out;
}

std::string to_text(const PassSequence& sequence) {
  std::string out;
  for (const auto& p : sequence.passes) out += p.str() + '\n';
  return out;
}

double search_space_order(std::size_t catalog_size, std::size_t sequence_length) {
  if (catalog_size == 0) {
    throw Error(ErrorKind::kInvalidArgument, "catalog size must be positive");
  }
  return static_cast<double>(sequence_length) * std::log10(static_cast<double>(catalog_size));
}

}  // namespace passgi
