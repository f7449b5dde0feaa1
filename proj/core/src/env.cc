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

#include "duelkit/env.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace duelkit {

double btl_probability(double w_i, double w_j) {
  if (!(w_i > 0.0) || !(w_j > 0.0) || !std::isfinite(w_i) ||
      !std::isfinite(w_j)) {
    throw std::invalid_argument("btl_probability: scores must be positive");
  }
  return w_i / (w_i + w_j);
}

PreferenceMatrix::PreferenceMatrix(Grid<double> p) : p_(std::move(p)) {
  const std::size_t k = p_.rows();
  if (k < 2 || p_.cols() != k) {
    throw std::invalid_argument("PreferenceMatrix: need a square k x k, k >= 2");
  }
  for (std::size_t i = 0; i < k; ++i) {
    p_(i, i) = 0.5;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double v = p_(i, j);
      if (!(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument(
            "PreferenceMatrix: off-diagonal entries must lie in (0, 1)");
      }
      if (std::abs(v + p_(j, i) - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "PreferenceMatrix: p(i, j) + p(j, i) must equal 1");
      }
    }
  }
}

PreferenceMatrix PreferenceMatrix::from_btl(std::span<const double> scores) {
  const std::size_t k = scores.size();
  if (k < 2) throw std::invalid_argument("from_btl: need k >= 2 scores");
  Grid<double> p(k, k, 0.5);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (scores[i] >= scores[j]) {
        p(i, j) = btl_probability(scores[i], scores[j]);
        p(j, i) = 1.0 - p(i, j);
      } else {
        p(j, i) = btl_probability(scores[j], scores[i]);
        p(i, j) = 1.0 - p(j, i);
      }
    }
  }
  return PreferenceMatrix(std::move(p));
}

std::vector<double> PreferenceMatrix::borda_strength() const {
  const std::size_t n = k();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) s[i] += p_(i, j);
    }
  }
  return s;
}

PreferenceEnvironment::PreferenceEnvironment(
    PreferenceMatrix matrix, std::optional<Grid<double>> features,
    std::string label)
    : matrix_(std::move(matrix)),
      features_(std::move(features)),
      label_(std::move(label)) {
  if (features_ && features_->rows() != matrix_.k()) {
    throw std::invalid_argument(
        "PreferenceEnvironment: features must have exactly k rows");
  }
  const std::vector<double> strength = matrix_.borda_strength();
  true_order_.resize(matrix_.k());
  std::iota(true_order_.begin(), true_order_.end(), Item{0});
  std::stable_sort(true_order_.begin(), true_order_.end(),
                   [&](Item a, Item b) { return strength[a] > strength[b]; });
}

PreferenceEnvironment make_btl_environment(
    std::span<const double> scores, std::optional<Grid<double>> features,
    std::string label) {
  return PreferenceEnvironment(PreferenceMatrix::from_btl(scores),
                               std::move(features), std::move(label));
}

namespace {

std::vector<double> draw_scores(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  for (double& x : w) x = std::exp(rng.normal());
  return w;
}

}  // namespace

std::vector<double> synthetic_scores(std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("generate_synthetic: k must be >= 2");
  Rng rng(seed);
  return draw_scores(k, rng);
}

PreferenceEnvironment generate_synthetic(std::size_t k, std::size_t d,
                                         std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("generate_synthetic: k must be >= 2");
  Rng rng(seed);
  const std::vector<double> w = draw_scores(k, rng);
  std::optional<Grid<double>> features;
  if (d > 0) {
    Grid<double> x(k, d);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < d; ++c) x(i, c) = rng.normal();
    }
    features = std::move(x);
  }
  return make_btl_environment(w, std::move(features), "synthetic");
}

Item duel(const PreferenceEnvironment& env, Item i, Item j, Rng& rng) {
  const std::size_t k = env.k();
  if (i == j || i >= k || j >= k) {
    throw std::invalid_argument("duel: items must be distinct and < k");
  }
  return rng.uniform() < env.matrix()(i, j) ? i : j;
}

double delta12(const PreferenceEnvironment& env) {
  const auto& order = env.true_order();
  const double gap = env.matrix()(order[0], order[1]) - 0.5;
  return gap * gap;
}

}  // namespace duelkit
