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

#ifndef DUELKIT_SPECTRAL_H_
#define DUELKIT_SPECTRAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "duelkit/env.h"
#include "duelkit/grid.h"

namespace duelkit {

// wins(i, j) = number of duels item i won against item j. The sufficient
// statistic for Rank Centrality and for pairwise posteriors.
class ComparisonCounts {
 public:
  explicit ComparisonCounts(std::size_t k);

  std::size_t k() const { return wins_.rows(); }
  std::uint32_t wins(Item i, Item j) const { return wins_(i, j); }
  std::uint32_t pair_total(Item i, Item j) const {
    return wins_(i, j) + wins_(j, i);
  }
  std::uint64_t total() const { return total_; }

  void record(Item winner, Item loser);
  // Direct cell assignment; for building fixtures in tests and tools.
  void set(Item i, Item j, std::uint32_t n);

  const Grid<std::uint32_t>& grid() const { return wins_; }

 private:
  Grid<std::uint32_t> wins_;
  std::uint64_t total_ = 0;
};

struct SpectralScores {
  std::vector<double> pi;  // stationary distribution, sums to 1
  std::size_t iterations = 0;
  bool converged = false;
};

struct RankCentralityOptions {
  double smoothing = 1.0;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

// Row-stochastic Rank Centrality chain:
//   T(i, j) = (1/k) (wins(j, i) + s) / (wins(i, j) + wins(j, i) + 2 s),  i != j
//   T(i, i) = 1 - sum_{j != i} T(i, j)
// A pair with no duels and s = 0 contributes no edge.
Grid<double> rank_centrality_chain(const ComparisonCounts& counts,
                                   double smoothing);

// Stationary distribution of the chain by power iteration from the uniform
// vector; stops once the L1 change is <= tol. Throws NonErgodicChainError
// when the chain has more than one closed class (only possible with
// smoothing == 0).
SpectralScores rank_centrality(const ComparisonCounts& counts,
                               const RankCentralityOptions& options = {});

// Items by descending score, equal scores by ascending index. Throws
// std::invalid_argument on NaN.
std::vector<Item> ranking_from_scores(std::span<const double> scores);

// First item of ranking_from_scores without the sort.
Item argmax_item(std::span<const double> scores);

}  // namespace duelkit

#endif  // DUELKIT_SPECTRAL_H_
