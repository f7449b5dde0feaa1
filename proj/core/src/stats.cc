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

#include "duelkit/stats.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace duelkit {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double sample_stddev(std::span<const double> x) {
  return std::sqrt(sample_variance(x));
}

namespace {

// Continued fraction for I_x(a, b); converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete beta: a and b must be > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf: df must be > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult welch_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) {
    throw std::invalid_argument("welch_t_test: need at least 2 values each");
  }
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double mx = mean(x);
  const double my = mean(y);
  const double vx = sample_variance(x) / nx;
  const double vy = sample_variance(y) / ny;

  TTestResult out;
  if (vx + vy == 0.0) {
    out.degenerate_variance = true;
    out.df = nx + ny - 2.0;
    if (mx == my) {
      out.t_stat = 0.0;
      out.p_value = 1.0;
    } else {
      out.t_stat = mx > my ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
      out.p_value = 0.0;
    }
    return out;
  }
  out.t_stat = (mx - my) / std::sqrt(vx + vy);
  out.df = (vx + vy) * (vx + vy) /
           (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
  const double x_beta = out.df / (out.df + out.t_stat * out.t_stat);
  out.p_value = regularized_incomplete_beta(0.5 * out.df, 0.5, x_beta);
  return out;
}

ErrorAnalysis error_analysis(std::span<const RunTrajectory> runs,
                             Item true_winner,
                             std::span<const Item> true_order) {
  if (runs.empty()) throw std::invalid_argument("error_analysis: no runs");
  std::size_t failures = 0;
  double rank_sum = 0.0;
  for (const RunTrajectory& r : runs) {
    if (r.final_recommendation == true_winner) continue;
    ++failures;
    rank_sum += true_rank_of(r.final_recommendation, true_order);
  }
  ErrorAnalysis out;
  // Defined as the complement so failure + recovery == 1 holds exactly.
  out.failure_rate = 1.0 - static_cast<double>(runs.size() - failures) /
                               static_cast<double>(runs.size());
  if (failures > 0) out.avg_true_rank_on_failure = rank_sum / failures;
  return out;
}

ErrorAnalysis error_analysis(std::span<const RunTrajectory> runs) {
  if (runs.empty()) throw std::invalid_argument("error_analysis: no runs");
  std::size_t failures = 0;
  double rank_sum = 0.0;
  for (const RunTrajectory& r : runs) {
    if (r.recovered()) continue;
    ++failures;
    rank_sum += r.final_true_rank();
  }
  ErrorAnalysis out;
  // Defined as the complement so failure + recovery == 1 holds exactly.
  out.failure_rate = 1.0 - static_cast<double>(runs.size() - failures) /
                               static_cast<double>(runs.size());
  if (failures > 0) out.avg_true_rank_on_failure = rank_sum / failures;
  return out;
}

}  // namespace duelkit
