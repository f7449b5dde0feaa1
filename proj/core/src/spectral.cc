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

#include "duelkit/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "duelkit/errors.h"

namespace duelkit {

ComparisonCounts::ComparisonCounts(std::size_t k) : wins_(k, k, 0) {
  if (k < 2) throw std::invalid_argument("ComparisonCounts: k must be >= 2");
}

void ComparisonCounts::record(Item winner, Item loser) {
  if (winner == loser || winner >= k() || loser >= k()) {
    throw std::invalid_argument("ComparisonCounts::record: bad items");
  }
  ++wins_(winner, loser);
  ++total_;
}

void ComparisonCounts::set(Item i, Item j, std::uint32_t n) {
  if (i == j || i >= k() || j >= k()) {
    throw std::invalid_argument("ComparisonCounts::set: bad items");
  }
  total_ = total_ - wins_(i, j) + n;
  wins_(i, j) = n;
}

Grid<double> rank_centrality_chain(const ComparisonCounts& counts,
                                   double smoothing) {
  const std::size_t k = counts.k();
  const double inv_k = 1.0 / static_cast<double>(k);
  Grid<double> t(k, k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double out = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double denom =
          static_cast<double>(counts.pair_total(i, j)) + 2.0 * smoothing;
      if (denom > 0.0) {
        t(i, j) = inv_k * (static_cast<double>(counts.wins(j, i)) + smoothing) /
                  denom;
      }
      out += t(i, j);
    }
    t(i, i) = 1.0 - out;
  }
  return t;
}

namespace {

// True when the directed graph of positive transitions has exactly one
// closed communicating class, i.e. the stationary distribution is unique.
bool has_single_closed_class(const Grid<double>& t) {
  const std::size_t k = t.rows();
  Grid<char> reach(k, k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Item> stack{i};
    reach(i, i) = 1;
    while (!stack.empty()) {
      const Item u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < k; ++v) {
        if (u != v && t(u, v) > 0.0 && !reach(i, v)) {
          reach(i, v) = 1;
          stack.push_back(v);
        }
      }
    }
  }
  // A node is in a closed class iff everything it reaches reaches it back.
  std::vector<char> assigned(k, 0);
  std::size_t closed = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (assigned[i]) continue;
    bool is_closed = true;
    for (std::size_t v = 0; v < k; ++v) {
      if (reach(i, v) && !reach(v, i)) is_closed = false;
    }
    for (std::size_t v = 0; v < k; ++v) {
      if (reach(i, v) && reach(v, i)) assigned[v] = 1;
    }
    if (is_closed) ++closed;
  }
  return closed == 1;
}

}  // namespace

SpectralScores rank_centrality(const ComparisonCounts& counts,
                               const RankCentralityOptions& options) {
  if (!(options.smoothing >= 0.0) || !(options.tol > 0.0)) {
    throw std::invalid_argument(
        "rank_centrality: smoothing must be >= 0 and tol > 0");
  }
  const std::size_t k = counts.k();
  const Grid<double> t = rank_centrality_chain(counts, options.smoothing);
  if (options.smoothing == 0.0 && !has_single_closed_class(t)) {
    throw NonErgodicChainError(
        "rank_centrality: comparison graph leaves the chain without a unique "
        "stationary distribution; use smoothing > 0");
  }

  SpectralScores out;
  std::vector<double> pi(k, 1.0 / static_cast<double>(k));
  std::vector<double> next(k);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double mass = pi[i];
      const auto row = t.row(i);
      for (std::size_t j = 0; j < k; ++j) next[j] += mass * row[j];
    }
    const double sum = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      next[j] /= sum;
      change += std::abs(next[j] - pi[j]);
    }
    pi.swap(next);
    out.iterations = it;
    if (change <= options.tol) {
      out.converged = true;
      break;
    }
  }
  out.pi = std::move(pi);
  return out;
}

std::vector<Item> ranking_from_scores(std::span<const double> scores) {
  for (double s : scores) {
    if (std::isnan(s)) throw std::invalid_argument("ranking_from_scores: NaN");
  }
  std::vector<Item> order(scores.size());
  std::iota(order.begin(), order.end(), Item{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return scores[a] > scores[b]; });
  return order;
}

Item argmax_item(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmax_item: empty");
  Item best = 0;
  for (Item i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw std::invalid_argument("argmax_item: NaN");
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace duelkit
