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

#include "duelkit/parwis.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "duelkit/errors.h"

namespace duelkit {

KnockoutInit::KnockoutInit(std::size_t k, Rng& rng) : order_(k) {
  if (k < 2) throw std::invalid_argument("KnockoutInit: k must be >= 2");
  std::iota(order_.begin(), order_.end(), Item{0});
  std::shuffle(order_.begin(), order_.end(), rng);
  carried_ = order_[0];
}

Pair KnockoutInit::next_pair() const {
  if (done()) throw std::logic_error("KnockoutInit: initialization finished");
  return {carried_, order_[next_]};
}

void KnockoutInit::advance(Item winner) {
  const Pair p = next_pair();
  if (winner != p.first && winner != p.second) {
    throw std::invalid_argument("KnockoutInit::advance: winner not in duel");
  }
  carried_ = winner;
  ++next_;
}

DisruptionScore disruption_value(const ComparisonCounts& counts, Item top,
                                 Item challenger, double upset_probability,
                                 double smoothing) {
  if (challenger == top) {
    throw std::invalid_argument("disruption: challenger must differ from top");
  }
  ComparisonCounts hypothetical = counts;
  hypothetical.record(challenger, top);
  RankCentralityOptions opts;
  opts.smoothing = smoothing;
  const SpectralScores after = rank_centrality(hypothetical, opts);
  const double gap = after.pi[challenger] - after.pi[top];
  return {challenger, upset_probability * std::max(0.0, gap)};
}

DisruptionScore parwis_disruption(const SpectralScores& scores,
                                  const ComparisonCounts& counts, Item top,
                                  Item challenger, double smoothing) {
  if (challenger == top) {
    throw std::invalid_argument("disruption: challenger must differ from top");
  }
  const double pc = scores.pi[challenger];
  const double pt = scores.pi[top];
  const double upset = pc + pt > 0.0 ? pc / (pc + pt) : 0.5;
  return disruption_value(counts, top, challenger, upset, smoothing);
}

Pair select_disruptive_pair(const SpectralScores& scores,
                            const ComparisonCounts& counts, double smoothing,
                            const UpsetModel& upset) {
  const std::vector<Item> ranking = ranking_from_scores(scores.pi);
  const Item top = ranking[0];
  Item best = ranking[1];
  double best_value = 0.0;
  for (Item c = 0; c < counts.k(); ++c) {
    if (c == top) continue;
    const DisruptionScore d =
        disruption_value(counts, top, c, upset(top, c), smoothing);
    if (d.value > best_value) {
      best_value = d.value;
      best = c;
    }
  }
  return {top, best};
}

Pair parwis_select_pair(const SpectralScores& scores,
                        const ComparisonCounts& counts, double smoothing) {
  return select_disruptive_pair(
      scores, counts, smoothing, [&](Item top, Item c) {
        const double pc = scores.pi[c];
        const double pt = scores.pi[top];
        return pc + pt > 0.0 ? pc / (pc + pt) : 0.5;
      });
}

Item parwis_recommend(const SpectralScores& scores, std::size_t observations) {
  const std::size_t k = scores.pi.size();
  if (k < 2 || observations + 1 < k) {
    throw NotReadyError("PARWiS: initialization has not finished");
  }
  return argmax_item(scores.pi);
}

namespace {

void check_dims(std::span<const double> theta, std::span<const double> x_i,
                std::span<const double> x_j) {
  if (theta.size() != x_i.size() || theta.size() != x_j.size()) {
    throw std::invalid_argument("contextual model: dimension mismatch");
  }
}

}  // namespace

double contextual_predict(std::span<const double> theta,
                          std::span<const double> x_i,
                          std::span<const double> x_j) {
  check_dims(theta, x_i, x_j);
  double z = 0.0;
  for (std::size_t c = 0; c < theta.size(); ++c) {
    z += theta[c] * (x_i[c] - x_j[c]);
  }
  return 1.0 / (1.0 + std::exp(-z));
}

std::vector<double> contextual_update(std::span<const double> theta,
                                      std::span<const double> x_i,
                                      std::span<const double> x_j, int outcome,
                                      double lr, double l2) {
  const double residual =
      static_cast<double>(outcome) - contextual_predict(theta, x_i, x_j);
  std::vector<double> next(theta.begin(), theta.end());
  for (std::size_t c = 0; c < next.size(); ++c) {
    next[c] += lr * (residual * (x_i[c] - x_j[c]) - l2 * theta[c]);
  }
  return next;
}

Pair contextual_parwis_select_pair(const SpectralScores& scores,
                                   const ComparisonCounts& counts,
                                   std::span<const double> theta,
                                   const std::optional<Grid<double>>& features,
                                   double smoothing, double alpha) {
  if (!features) return parwis_select_pair(scores, counts, smoothing);
  return select_disruptive_pair(
      scores, counts, smoothing, [&](Item top, Item c) {
        const double pc = scores.pi[c];
        const double pt = scores.pi[top];
        const double spectral = pc + pt > 0.0 ? pc / (pc + pt) : 0.5;
        const double logistic =
            contextual_predict(theta, features->row(c), features->row(top));
        return alpha * spectral + (1.0 - alpha) * logistic;
      });
}

ParwisFamilyAgent::ParwisFamilyAgent(std::size_t k, Rng rng, double smoothing)
    : rng_(std::move(rng)),
      smoothing_(smoothing),
      counts_(k),
      init_(k, rng_) {
  scores_.pi.assign(k, 1.0 / static_cast<double>(k));
  scores_.converged = true;
}

Pair ParwisFamilyAgent::select_pair(std::size_t t) {
  if (!init_.done()) return init_.next_pair();
  return select_after_init(t);
}

void ParwisFamilyAgent::observe(const DuelObservation& obs) {
  validate_observation(obs, counts_.k());
  const Item before = argmax_item(scores_.pi);
  if (!init_.done()) init_.advance(obs.winner);
  counts_.record(obs.winner, obs.loser());
  ++observations_;
  RankCentralityOptions opts;
  opts.smoothing = smoothing_;
  scores_ = rank_centrality(counts_, opts);
  top_changed_ = argmax_item(scores_.pi) != before;
  on_observe(obs);
}

Item ParwisFamilyAgent::recommend() const {
  return parwis_recommend(scores_, observations_);
}

Item ParwisFamilyAgent::current_leader() const {
  return argmax_item(scores_.pi);
}

std::optional<std::vector<Item>> ParwisFamilyAgent::internal_ranking() const {
  return ranking_from_scores(scores_.pi);
}

ParwisAgent::ParwisAgent(std::size_t k, Rng rng, double smoothing)
    : ParwisFamilyAgent(k, std::move(rng), smoothing) {}

Pair ParwisAgent::select_after_init(std::size_t) {
  return parwis_select_pair(scores(), counts(), smoothing());
}

ContextualParwisAgent::ContextualParwisAgent(
    std::size_t k, std::optional<Grid<double>> features, Rng rng,
    ContextualOptions options)
    : ParwisFamilyAgent(k, std::move(rng), options.smoothing),
      features_(std::move(features)),
      options_(options) {
  if (features_) {
    if (features_->rows() != k) {
      throw std::invalid_argument("ContextualParwisAgent: need k feature rows");
    }
    theta_.assign(features_->cols(), 0.0);
  }
}

Pair ContextualParwisAgent::select_after_init(std::size_t) {
  return contextual_parwis_select_pair(scores(), counts(), theta_, features_,
                                       smoothing(), options_.alpha);
}

void ContextualParwisAgent::on_observe(const DuelObservation& obs) {
  if (!features_) return;
  theta_ = contextual_update(theta_, features_->row(obs.i),
                             features_->row(obs.j), obs.winner == obs.i ? 1 : 0,
                             options_.lr, options_.l2);
}

}  // namespace duelkit
