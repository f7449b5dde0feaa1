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

#include "duelkit/agents.h"

#include <stdexcept>
#include <utility>

namespace duelkit {

void validate_observation(const DuelObservation& obs, std::size_t k) {
  if (obs.i == obs.j || obs.i >= k || obs.j >= k ||
      (obs.winner != obs.i && obs.winner != obs.j)) {
    throw std::invalid_argument("invalid duel observation");
  }
}

Pair random_select_pair(std::size_t k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("random_select_pair: k must be >= 2");
  const Item first = rng.uniform_index(k);
  Item second = rng.uniform_index(k - 1);
  if (second >= first) ++second;
  return {first, second};
}

RandomAgent::RandomAgent(std::size_t k, Rng rng) : k_(k), rng_(std::move(rng)) {
  if (k < 2) throw std::invalid_argument("RandomAgent: k must be >= 2");
}

Pair RandomAgent::select_pair(std::size_t) {
  return random_select_pair(k_, rng_);
}

// The baseline keeps no model; its answer is a fresh uniform draw after
// every duel.
void RandomAgent::observe(const DuelObservation& obs) {
  validate_observation(obs, k_);
  guess_ = rng_.uniform_index(k_);
}

Item RandomAgent::recommend() const { return guess_; }

BetaPosteriorGrid::BetaPosteriorGrid(std::size_t k)
    : a_(k, k, 1.0), b_(k, k, 1.0) {
  if (k < 2) throw std::invalid_argument("BetaPosteriorGrid: k must be >= 2");
}

void BetaPosteriorGrid::update(Item winner, Item loser) {
  if (winner == loser || winner >= k() || loser >= k()) {
    throw std::invalid_argument("BetaPosteriorGrid::update: bad items");
  }
  a_(winner, loser) += 1.0;
  b_(loser, winner) += 1.0;
}

Pair dts_select_pair(const BetaPosteriorGrid& grid, Rng& rng) {
  const std::size_t k = grid.k();
  Grid<double> theta(k, k, 0.5);
  for (Item i = 0; i < k; ++i) {
    for (Item j = i + 1; j < k; ++j) {
      theta(i, j) = rng.beta(grid.a(i, j), grid.b(i, j));
      theta(j, i) = 1.0 - theta(i, j);
    }
  }
  Item first = 0;
  std::size_t best_wins = 0;
  for (Item i = 0; i < k; ++i) {
    std::size_t wins = 0;
    for (Item j = 0; j < k; ++j) {
      if (i != j && theta(i, j) > 0.5) ++wins;
    }
    if (i == 0 || wins > best_wins) {
      best_wins = wins;
      first = i;
    }
  }

  Item second = first == 0 ? 1 : 0;
  double best_phi = -1.0;
  for (Item i = 0; i < k; ++i) {
    if (i == first) continue;
    const double phi = rng.beta(grid.a(i, first), grid.b(i, first));
    if (phi > best_phi) {
      best_phi = phi;
      second = i;
    }
  }
  return {first, second};
}

void dts_observe(BetaPosteriorGrid& grid, const DuelObservation& obs) {
  validate_observation(obs, grid.k());
  grid.update(obs.winner, obs.loser());
}

Item dts_recommend(const BetaPosteriorGrid& grid) {
  const std::size_t k = grid.k();
  Item best = 0;
  std::size_t best_wins = 0;
  double best_sum = -1.0;
  for (Item i = 0; i < k; ++i) {
    std::size_t wins = 0;
    double sum = 0.0;
    for (Item j = 0; j < k; ++j) {
      if (i == j) continue;
      const double m = grid.mean(i, j);
      if (m > 0.5) ++wins;
      sum += m;
    }
    if (i == 0 || wins > best_wins || (wins == best_wins && sum > best_sum)) {
      best = i;
      best_wins = wins;
      best_sum = sum;
    }
  }
  return best;
}

DoubleThompsonAgent::DoubleThompsonAgent(std::size_t k, Rng rng)
    : grid_(k), rng_(std::move(rng)) {}

Pair DoubleThompsonAgent::select_pair(std::size_t) {
  return dts_select_pair(grid_, rng_);
}

void DoubleThompsonAgent::observe(const DuelObservation& obs) {
  dts_observe(grid_, obs);
}

Item DoubleThompsonAgent::recommend() const { return dts_recommend(grid_); }

}  // namespace duelkit
