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

#include "error.hpp"

namespace passgi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidPassName: return "InvalidPassName";
    case ErrorKind::kDuplicatePass: return "DuplicatePass";
    case ErrorKind::kEmptyCatalog: return "EmptyCatalog";
    case ErrorKind::kMalformedLine: return "MalformedLine";
    case ErrorKind::kUnknownPass: return "UnknownPass";
    case ErrorKind::kMalformedPatchLine: return "MalformedPatchLine";
    case ErrorKind::kPositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kConfig: return "ConfigurationError";
    case ErrorKind::kNonPositiveBaseline: return "NonPositiveBaseline";
    case ErrorKind::kDegenerateSample: return "DegenerateSample";
    case ErrorKind::kBaselineFailed: return "BaselineFailed";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace passgi
