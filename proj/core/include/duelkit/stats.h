// Copyright 2026 The duelkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUELKIT_STATS_H_
#define DUELKIT_STATS_H_

#include <cstdint>
#include <optional>
#include <span>

#include "duelkit/env.h"
#include "duelkit/metrics.h"

namespace duelkit {

struct TTestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  double df = 0.0;  // Welch-Satterthwaite
  // Both samples had zero variance; t and p follow the fixed convention
  // (0 and 1 for equal means, +-inf and 0 otherwise).
  bool degenerate_variance = false;
};

// Two-sided Welch unequal-variance t-test. Throws std::invalid_argument if
// either sample has fewer than two values.
TTestResult welch_t_test(std::span<const double> x, std::span<const double> y);

// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

double mean(std::span<const double> x);
// n-1 denominator; 0 for fewer than two values.
double sample_variance(std::span<const double> x);
double sample_stddev(std::span<const double> x);

struct ErrorAnalysis {
  double failure_rate = 0.0;
  // Mean true rank of the reported winner over failing runs only.
  std::optional<double> avg_true_rank_on_failure;
};

ErrorAnalysis error_analysis(std::span<const RunTrajectory> runs,
                             Item true_winner, std::span<const Item> true_order);
// Uses each run's own true winner and recorded final true rank.
ErrorAnalysis error_analysis(std::span<const RunTrajectory> runs);

}  // namespace duelkit

#endif  // DUELKIT_STATS_H_
