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

#ifndef PASSGI_PASS_CATALOG_HPP_
#define PASSGI_PASS_CATALOG_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace passgi {

// A single optimizer pass token, compared byte for byte.
class PassName {
 public:
  // Throws Error(kInvalidPassName) on empty tokens or tokens containing
  // whitespace or control characters.
  explicit PassName(std::string token);

  const std::string& str() const noexcept { return token_; }

  friend bool operator==(const PassName&, const PassName&) = default;
  friend auto operator<=>(const PassName&, const PassName&) = default;

 private:
  std::string token_;
};

bool is_valid_pass_token(std::string_view token) noexcept;

// The vocabulary of the search space: distinct passes in file order.
class PassCatalog {
 public:
  // Throws kEmptyCatalog or kDuplicatePass.
  PassCatalog(std::vector<PassName> passes, std::string source_label);

  const std::vector<PassName>& passes() const noexcept { return passes_; }
  const std::string& source_label() const noexcept { return source_label_; }
  std::size_t size() const noexcept { return passes_.size(); }
  const PassName& operator[](std::size_t i) const { return passes_[i]; }

  bool contains(std::string_view token) const;

  friend bool operator==(const PassCatalog& a, const PassCatalog& b) {
    return a.passes_ == b.passes_;
  }

 private:
  std::vector<PassName> passes_;
  std::string source_label_;
  std::unordered_map<std::string, std::size_t> index_;
};

// An ordered pass program. Duplicates are allowed and so is emptiness.
struct PassSequence {
  std::vector<PassName> passes;
  std::string label;

  std::size_t size() const noexcept { return passes.size(); }
  bool empty() const noexcept { return passes.empty(); }

  // Label is provenance only and does not take part in equality.
  friend bool operator==(const PassSequence& a, const PassSequence& b) {
    return a.passes == b.passes;
  }
};

PassCatalog load_catalog(std::string_view text, std::string source_label = {});
PassSequence load_sequence(std::string_view text, const PassCatalog& catalog,
                           std::string label = {});

// File variants set the label to the path. Throw kIo when unreadable.
PassCatalog load_catalog_file(const std::filesystem::path& path);
PassSequence load_sequence_file(const std::filesystem::path& path, const PassCatalog& catalog);

// The built-in legacy -O3 snapshot shipped with the library.
const PassCatalog& builtin_catalog();
PassSequence builtin_baseline();

// One token per line, newline terminated.
std::string to_text(const PassCatalog& catalog);
std::string to_text(const PassSequence& sequence);

// log10 of catalog_size^sequence_length.
double search_space_order(std::size_t catalog_size, std::size_t sequence_length);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace passgi

#endif  // PASSGI_PASS_CATALOG_HPP_
