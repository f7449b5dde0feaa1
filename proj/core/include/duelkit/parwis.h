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

#ifndef DUELKIT_PARWIS_H_
#define DUELKIT_PARWIS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "duelkit/agents.h"
#include "duelkit/env.h"
#include "duelkit/grid.h"
#include "duelkit/rng.h"
#include "duelkit/spectral.h"

namespace duelkit {

// Knockout-chain initialization over a uniformly random permutation rho:
// duel 1 is (rho[0], rho[1]); duel m is (winner of duel m-1, rho[m]).
// Exactly k-1 duels, and the comparison graph ends up connected.
class KnockoutInit {
 public:
  KnockoutInit(std::size_t k, Rng& rng);

  bool done() const { return next_ >= order_.size(); }
  std::size_t duels_done() const { return next_ - 1; }
  const std::vector<Item>& order() const { return order_; }

  // Pair for the next initialization duel. Requires !done().
  Pair next_pair() const;
  // Feeds the winner of next_pair() back in.
  void advance(Item winner);

 private:
  std::vector<Item> order_;
  Item carried_;
  std::size_t next_ = 1;
};

struct DisruptionScore {
  Item challenger = 0;
  double value = 0.0;
};

// Expected reversal at the top: let pi' be the Rank Centrality scores after
// one hypothetical extra win of challenger over top, then
//   value = upset_probability * max(0, pi'[challenger] - pi'[top]).
DisruptionScore disruption_value(const ComparisonCounts& counts, Item top,
                                 Item challenger, double upset_probability,
                                 double smoothing);

// disruption_value with the plug-in BTL upset probability
// pi[c] / (pi[c] + pi[top]) taken from the current scores.
DisruptionScore parwis_disruption(const SpectralScores& scores,
                                  const ComparisonCounts& counts, Item top,
                                  Item challenger, double smoothing);

// Probability the challenger upsets the top item.
using UpsetModel = std::function<double(Item top, Item challenger)>;

// (top, c*) where c* maximizes disruption under the given upset model. If
// every value is zero the second-ranked item is used. Ties to lowest index.
Pair select_disruptive_pair(const SpectralScores& scores,
                            const ComparisonCounts& counts, double smoothing,
                            const UpsetModel& upset);

Pair parwis_select_pair(const SpectralScores& scores,
                        const ComparisonCounts& counts, double smoothing);

// Argmax of pi. Throws NotReadyError until the k-1 initialization duels
// have been observed.
Item parwis_recommend(const SpectralScores& scores, std::size_t observations);

// sigmoid(theta . (x_i - x_j)).
double contextual_predict(std::span<const double> theta,
                          std::span<const double> x_i,
                          std::span<const double> x_j);

// One SGD step on the L2-regularized log-loss of outcome (1 if i won):
//   theta' = theta + lr ((outcome - p) (x_i - x_j) - l2 theta).
std::vector<double> contextual_update(std::span<const double> theta,
                                      std::span<const double> x_i,
                                      std::span<const double> x_j, int outcome,
                                      double lr, double l2);

// PARWiS selection with p = alpha p_spectral + (1 - alpha) p_logistic. Without
// features this is parwis_select_pair.
Pair contextual_parwis_select_pair(const SpectralScores& scores,
                                   const ComparisonCounts& counts,
                                   std::span<const double> theta,
                                   const std::optional<Grid<double>>& features,
                                   double smoothing, double alpha);

// Shared skeleton for PARWiS, Contextual PARWiS and RL PARWiS: knockout
// initialization, then a subclass-specific challenger choice against the
// current spectral top. Scores are recomputed after every observation.
class ParwisFamilyAgent : public Agent {
 public:
  std::size_t k() const override { return counts_.k(); }
  Pair select_pair(std::size_t t) override;
  void observe(const DuelObservation& obs) override;
  Item recommend() const override;
  Item current_leader() const override;
  std::optional<std::vector<Item>> internal_ranking() const override;
  bool in_initialization() const override { return !init_.done(); }

  const SpectralScores& scores() const { return scores_; }
  const ComparisonCounts& counts() const { return counts_; }
  std::size_t observations() const { return observations_; }
  // Whether the spectral argmax moved on the most recent observation.
  bool top_changed() const { return top_changed_; }
  double smoothing() const { return smoothing_; }

 protected:
  ParwisFamilyAgent(std::size_t k, Rng rng, double smoothing);

  virtual Pair select_after_init(std::size_t t) = 0;
  virtual void on_observe(const DuelObservation&) {}

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  double smoothing_;
  ComparisonCounts counts_;
  KnockoutInit init_;
  SpectralScores scores_;
  std::size_t observations_ = 0;
  bool top_changed_ = false;
};

class ParwisAgent final : public ParwisFamilyAgent {
 public:
  ParwisAgent(std::size_t k, Rng rng, double smoothing = 1.0);
  std::string_view name() const override { return "parwis"; }

 protected:
  Pair select_after_init(std::size_t t) override;
};

struct ContextualOptions {
  double smoothing = 1.0;
  double alpha = 0.5;
  double lr = 0.1;
  double l2 = 0.01;
};

// Learns a logistic model over feature differences from every observed duel
// and blends it into the upset probability once initialization is over.
class ContextualParwisAgent final : public ParwisFamilyAgent {
 public:
  ContextualParwisAgent(std::size_t k, std::optional<Grid<double>> features,
                        Rng rng, ContextualOptions options = {});
  std::string_view name() const override { return "contextual"; }

  const std::vector<double>& theta() const { return theta_; }

 protected:
  Pair select_after_init(std::size_t t) override;
  void on_observe(const DuelObservation& obs) override;

 private:
  std::optional<Grid<double>> features_;
  ContextualOptions options_;
  std::vector<double> theta_;
};

}  // namespace duelkit

#endif  // DUELKIT_PARWIS_H_
