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

#ifndef PASSGI_STATS_HPP_
#define PASSGI_STATS_HPP_

#include <cstddef>
#include <span>

namespace passgi {

// 100 * (baseline - evolved) / baseline; positive means the evolved sequence
// is faster. Throws kNonPositiveBaseline.
double percent_improvement(double baseline, double evolved);

double mean(std::span<const double> xs);
// n - 1 denominator; zero for fewer than two values.
double sample_stddev(std::span<const double> xs);

// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double incomplete_beta(double a, double b, double x);

// Upper tail P(T >= t) of Student's t with df degrees of freedom.
double student_t_upper_tail(double t, double df);

// One-sample t-test of H0: mean = 0 against H1: mean > 0.
struct SummaryStats {
  std::size_t n = 0;
  double mean_improvement = 0.0;
  double sample_stddev = 0.0;
  double t_statistic = 0.0;
  double p_value_one_tailed = 1.0;
};

// Throws kDegenerateSample when n < 2 or the values have zero spread.
SummaryStats summarize(std::span<const double> improvements);

}  // namespace passgi

#endif  // PASSGI_STATS_HPP_
