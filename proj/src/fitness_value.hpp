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

#ifndef PASSGI_FITNESS_VALUE_HPP_
#define PASSGI_FITNESS_VALUE_HPP_

#include <cmath>
#include <compare>
#include <limits>
#include <optional>

#include "error.hpp"

namespace passgi {

// Mean runtime in seconds, or PENALTY. Lower is better and PENALTY orders
// above every measurement.
class FitnessValue {
 public:
  static FitnessValue penalty() { return FitnessValue(); }

  // Throws kInvalidArgument unless seconds is finite and positive.
  static FitnessValue measured(double seconds) {
    if (!(std::isfinite(seconds) && seconds > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "measured fitness must be finite and positive");
    }
    return FitnessValue(seconds);
  }

  bool is_penalty() const noexcept { return !seconds_.has_value(); }

  // Requires !is_penalty().
  double seconds() const { return *seconds_; }

  // +inf for PENALTY, for reporting.
  double as_double() const noexcept {
    return seconds_ ? *seconds_ : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
  friend std::partial_ordering operator<=>(const FitnessValue& a, const FitnessValue& b) {
    if (a.is_penalty() || b.is_penalty()) {
      return static_cast<int>(a.is_penalty()) <=> static_cast<int>(b.is_penalty());
    }
    return *a.seconds_ <=> *b.seconds_;
  }

 private:
  FitnessValue() = default;
  explicit FitnessValue(double seconds) : seconds_(seconds) {}

  std::optional<double> seconds_;
};

}  // namespace passgi

#endif  // PASSGI_FITNESS_VALUE_HPP_
