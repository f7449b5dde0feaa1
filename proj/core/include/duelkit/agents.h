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

#ifndef DUELKIT_AGENTS_H_
#define DUELKIT_AGENTS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "duelkit/env.h"
#include "duelkit/grid.h"
#include "duelkit/rng.h"
#include "duelkit/spectral.h"

namespace duelkit {

// Outcome of the t-th duel (1-based) between i and j.
struct DuelObservation {
  Item i = 0;
  Item j = 0;
  Item winner = 0;
  std::size_t t = 0;

  Item loser() const { return winner == i ? j : i; }
};

// Throws std::invalid_argument unless i != j, winner is one of them, and
// both are below k.
void validate_observation(const DuelObservation& obs, std::size_t k);

// Common contract of every dueling policy. One instance serves one run and
// is driven single-threaded: select_pair(t), then observe() with the result.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t k() const = 0;

  // Never returns a self-pair.
  virtual Pair select_pair(std::size_t t) = 0;
  virtual void observe(const DuelObservation& obs) = 0;

  // Final answer. May throw NotReadyError (PARWiS family mid-initialization).
  virtual Item recommend() const = 0;

  // Best current guess at any point of the run; equal to recommend() once
  // that is defined. This is what per-duel metrics record.
  virtual Item current_leader() const { return recommend(); }

  // Present only for agents that maintain a full estimated ranking.
  virtual std::optional<std::vector<Item>> internal_ranking() const {
    return std::nullopt;
  }

  virtual bool in_initialization() const { return false; }
};

// Uniform over the k(k-1)/2 unordered pairs, order within the pair random.
Pair random_select_pair(std::size_t k, Rng& rng);

// Random pair selection. Recommends a uniformly random item, redrawn after
// each observation (item 0 before the first one).
class RandomAgent final : public Agent {
 public:
  RandomAgent(std::size_t k, Rng rng);

  std::string_view name() const override { return "random"; }
  std::size_t k() const override { return k_; }
  Pair select_pair(std::size_t t) override;
  void observe(const DuelObservation& obs) override;
  Item recommend() const override;

 private:
  std::size_t k_;
  Rng rng_;
  Item guess_ = 0;
};

// Beta(a, b) posterior over P(i beats j) for every ordered pair. Starts at
// Beta(1, 1) and keeps a(i, j) == b(j, i).
class BetaPosteriorGrid {
 public:
  explicit BetaPosteriorGrid(std::size_t k);

  std::size_t k() const { return a_.rows(); }
  double a(Item i, Item j) const { return a_(i, j); }
  double b(Item i, Item j) const { return b_(i, j); }
  double mean(Item i, Item j) const { return a_(i, j) / (a_(i, j) + b_(i, j)); }

  void update(Item winner, Item loser);

 private:
  Grid<double> a_;
  Grid<double> b_;
};

// Double Thompson Sampling selection. Step one samples a full preference
// matrix and takes its Copeland winner as the first arm; step two samples
// P(i beats first) for every other i and takes the argmax as the second.
// Ties go to the lowest index.
Pair dts_select_pair(const BetaPosteriorGrid& grid, Rng& rng);

void dts_observe(BetaPosteriorGrid& grid, const DuelObservation& obs);

// Copeland winner of the posterior-mean matrix. Ties broken by the sum of
// posterior means, then lowest index.
Item dts_recommend(const BetaPosteriorGrid& grid);

class DoubleThompsonAgent final : public Agent {
 public:
  DoubleThompsonAgent(std::size_t k, Rng rng);

  std::string_view name() const override { return "dts"; }
  std::size_t k() const override { return grid_.k(); }
  Pair select_pair(std::size_t t) override;
  void observe(const DuelObservation& obs) override;
  Item recommend() const override;

  const BetaPosteriorGrid& posterior() const { return grid_; }

 private:
  BetaPosteriorGrid grid_;
  Rng rng_;
};

}  // namespace duelkit

#endif  // DUELKIT_AGENTS_H_
