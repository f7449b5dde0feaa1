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

#ifndef DUELKIT_ENV_H_
#define DUELKIT_ENV_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duelkit/grid.h"
#include "duelkit/rng.h"

namespace duelkit {

using Item = std::size_t;

// An ordered pair of distinct items to duel.
struct Pair {
  Item first = 0;
  Item second = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
};

// w_i / (w_i + w_j). Throws std::invalid_argument unless both scores are
// positive and finite.
double btl_probability(double w_i, double w_j);

// k x k win-probability matrix: p(i, j) is the chance that i beats j.
// Off-diagonal entries lie in (0, 1) and p(i, j) + p(j, i) = 1; the diagonal
// is fixed at 0.5 and never sampled.
class PreferenceMatrix {
 public:
  // Validates the invariants above (antisymmetry within 1e-12).
  explicit PreferenceMatrix(Grid<double> p);

  // Matrix of btl_probability over the score vector. Each pair is built
  // from its >= 0.5 side so that p(i, j) + p(j, i) == 1 exactly.
  static PreferenceMatrix from_btl(std::span<const double> scores);

  std::size_t k() const { return p_.rows(); }
  double operator()(Item i, Item j) const { return p_(i, j); }
  const Grid<double>& grid() const { return p_; }

  // Row sums excluding the diagonal (Borda strength up to a constant).
  std::vector<double> borda_strength() const;

  friend bool operator==(const PreferenceMatrix&,
                         const PreferenceMatrix&) = default;

 private:
  Grid<double> p_;
};

// Immutable duel oracle plus its ground truth. Safe to share across
// concurrently executing runs.
class PreferenceEnvironment {
 public:
  PreferenceEnvironment(PreferenceMatrix matrix,
                        std::optional<Grid<double>> features,
                        std::string label);

  std::size_t k() const { return matrix_.k(); }
  const PreferenceMatrix& matrix() const { return matrix_; }

  // Items by descending Borda strength, ties by lowest index.
  const std::vector<Item>& true_order() const { return true_order_; }
  Item true_winner() const { return true_order_.front(); }

  // k x d features, when the dataset has any.
  const std::optional<Grid<double>>& features() const { return features_; }
  const std::string& label() const { return label_; }

 private:
  PreferenceMatrix matrix_;
  std::vector<Item> true_order_;
  std::optional<Grid<double>> features_;
  std::string label_;
};

// BTL environment over explicit scores. features may be empty (absent).
PreferenceEnvironment make_btl_environment(
    std::span<const double> scores, std::optional<Grid<double>> features,
    std::string label = "synthetic");

// Synthetic BTL environment: w_i = exp(z_i), z_i ~ N(0, 1); features are
// k x d standard normals when d > 0. Pure function of (k, d, seed).
PreferenceEnvironment generate_synthetic(std::size_t k, std::size_t d,
                                         std::uint64_t seed);

// Same draws as generate_synthetic, but returns only the scores.
std::vector<double> synthetic_scores(std::size_t k, std::uint64_t seed);

// Returns i with probability p(i, j), else j. Consumes exactly one uniform
// draw.
Item duel(const PreferenceEnvironment& env, Item i, Item j, Rng& rng);

// (p(a, b) - 0.5)^2 for the two best items a, b of true_order().
double delta12(const PreferenceEnvironment& env);

}  // namespace duelkit

#endif  // DUELKIT_ENV_H_
