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

#ifndef PASSGI_ERROR_HPP_
#define PASSGI_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace passgi {

enum class ErrorKind {
  kInvalidPassName,
  kDuplicatePass,
  kEmptyCatalog,
  kMalformedLine,
  kUnknownPass,
  kMalformedPatchLine,
  kPositionOutOfRange,
  kIo,
  kConfig,
  kNonPositiveBaseline,
  kDegenerateSample,
  kBaselineFailed,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

// All recoverable failures in the library are reported as Error. `line` is
// 1-based and zero when the failure is not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(message), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace passgi

#endif  // PASSGI_ERROR_HPP_
