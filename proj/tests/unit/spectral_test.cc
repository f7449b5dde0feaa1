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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "duelkit/errors.h"
#include "oracles.h"

namespace duelkit {
namespace {

std::vector<std::vector<std::uint32_t>> as_nested(const ComparisonCounts& c) {
  std::vector<std::vector<std::uint32_t>> w(c.k(), std::vector<std::uint32_t>(c.k()));
  for (Item i = 0; i < c.k(); ++i)
    for (Item j = 0; j < c.k(); ++j) w[i][j] = i == j ? 0 : c.wins(i, j);
  return w;
}

ComparisonCounts random_counts(std::size_t k, Rng& rng, std::uint32_t max_wins,
                               bool every_pair) {
  ComparisonCounts c(k);
  for (Item i = 0; i < k; ++i) {
    for (Item j = 0; j < k; ++j) {
      if (i == j) continue;
      c.set(i, j, static_cast<std::uint32_t>(rng.uniform_index(max_wins + 1)));
    }
  }
  if (every_pair) {
    for (Item i = 0; i < k; ++i)
      for (Item j = i + 1; j < k; ++j)
        if (c.pair_total(i, j) == 0) c.set(i, j, 1);
  }
  return c;
}

TEST(ComparisonCounts, TotalsTrackRecords) {
  ComparisonCounts c(3);
  c.record(0, 1);
  c.record(0, 1);
  c.record(2, 0);
  EXPECT_EQ(c.total(), 3u);
  EXPECT_EQ(c.wins(0, 1), 2u);
  EXPECT_EQ(c.pair_total(1, 0), 2u);
  EXPECT_EQ(c.wins(0, 0), 0u);
  EXPECT_THROW(c.record(1, 1), std::invalid_argument);
}

TEST(RankCentrality, ZeroCountsGiveUniform) {
  for (std::size_t k : {2u, 5u, 20u}) {
    const auto s = rank_centrality(ComparisonCounts(k));
    ASSERT_TRUE(s.converged);
    for (double p : s.pi) EXPECT_NEAR(p, 1.0 / k, 1e-12);
  }
}

TEST(RankCentrality, TwoStateClosedForm) {
  ComparisonCounts c(2);
  c.set(0, 1, 10);
  const auto s = rank_centrality(c);
  // T(0,1) = (1/2)(0+1)/(10+2), T(1,0) = (1/2)(10+1)/(10+2).
  const double t01 = 0.5 * 1.0 / 12.0;
  const double t10 = 0.5 * 11.0 / 12.0;
  EXPECT_GT(s.pi[0], s.pi[1]);
  EXPECT_NEAR(s.pi[0], t10 / (t01 + t10), 1e-10);
}

TEST(RankCentrality, MatchesEigenOracleOnSmallK) {
  Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const auto c = random_counts(4, rng, 6, true);
    const auto s = rank_centrality(c);
    const auto ref = oracle::stationary(as_nested(c), 1.0);
    ASSERT_TRUE(s.converged);
    for (Item i = 0; i < 4; ++i) EXPECT_NEAR(s.pi[i], ref[i], 1e-8);
  }
}

TEST(RankCentrality, ProbabilityVectorAndStationarity) {
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t k = 2 + rng.uniform_index(10);
    const auto c = random_counts(k, rng, 4, false);
    RankCentralityOptions opts;
    const auto s = rank_centrality(c, opts);
    ASSERT_TRUE(s.converged);
    EXPECT_NEAR(std::accumulate(s.pi.begin(), s.pi.end(), 0.0), 1.0, 1e-10);
    for (double p : s.pi) EXPECT_GE(p, 0.0);
    const auto t = rank_centrality_chain(c, opts.smoothing);
    double residual = 0.0;
    for (Item j = 0; j < k; ++j) {
      double v = 0.0;
      for (Item i = 0; i < k; ++i) v += s.pi[i] * t(i, j);
      residual += std::abs(v - s.pi[j]);
    }
    EXPECT_LE(residual, 10 * opts.tol);
  }
}

TEST(RankCentrality, NoiselessTotalOrderIsRecovered) {
  Rng rng(31);
  for (std::size_t k = 2; k <= 6; ++k) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Item> truth(k);
      std::iota(truth.begin(), truth.end(), Item{0});
      std::shuffle(truth.begin(), truth.end(), rng);
      ComparisonCounts c(k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          c.set(truth[a], truth[b], 5 + static_cast<std::uint32_t>(rng.uniform_index(3)));
      EXPECT_EQ(ranking_from_scores(rank_centrality(c).pi), truth);
    }
  }
}

TEST(RankCentrality, PermutationEquivariant) {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t k = 5;
    const auto c = random_counts(k, rng, 5, false);
    std::vector<Item> sigma(k);
    std::iota(sigma.begin(), sigma.end(), Item{0});
    std::shuffle(sigma.begin(), sigma.end(), rng);
    ComparisonCounts relabeled(k);
    for (Item i = 0; i < k; ++i)
      for (Item j = 0; j < k; ++j)
        if (i != j) relabeled.set(sigma[i], sigma[j], c.wins(i, j));
    const auto a = rank_centrality(c);
    const auto b = rank_centrality(relabeled);
    for (Item i = 0; i < k; ++i) EXPECT_NEAR(b.pi[sigma[i]], a.pi[i], 1e-12);
  }
}

TEST(RankCentrality, UnsmoothedDisconnectedChainIsAnError) {
  ComparisonCounts c(4);
  c.set(0, 1, 2);
  c.set(1, 0, 1);
  c.set(2, 3, 1);
  c.set(3, 2, 3);
  RankCentralityOptions opts;
  opts.smoothing = 0.0;
  EXPECT_THROW(rank_centrality(c, opts), NonErgodicChainError);
  // The same counts are fine with smoothing.
  EXPECT_NO_THROW(rank_centrality(c));
  // Connected (a path) but with unobserved pairs: the chain is still ergodic.
  c.set(1, 2, 1);
  c.set(2, 1, 1);
  const auto s = rank_centrality(c, opts);
  EXPECT_TRUE(s.converged);
  const auto ref = oracle::stationary(as_nested(c), 0.0);
  for (Item i = 0; i < 4; ++i) EXPECT_NEAR(s.pi[i], ref[i], 1e-8);
}

TEST(RankCentrality, RejectsBadOptions) {
  RankCentralityOptions opts;
  opts.tol = 0;
  EXPECT_THROW(rank_centrality(ComparisonCounts(3), opts), std::invalid_argument);
  opts.tol = 1e-10;
  opts.smoothing = -1;
  EXPECT_THROW(rank_centrality(ComparisonCounts(3), opts), std::invalid_argument);
}

TEST(RankCentrality, ReportsNonConvergence) {
  ComparisonCounts c(3);
  c.set(0, 1, 10);
  RankCentralityOptions opts;
  opts.max_iter = 1;
  const auto s = rank_centrality(c, opts);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.iterations, 1u);
}

TEST(RankingFromScores, TieBreaksByIndex) {
  EXPECT_EQ(ranking_from_scores(std::vector{0.5, 0.3, 0.2}), (std::vector<Item>{0, 1, 2}));
  EXPECT_EQ(ranking_from_scores(std::vector{0.2, 0.2, 0.6}), (std::vector<Item>{2, 0, 1}));
  EXPECT_EQ(ranking_from_scores(std::vector{0.25, 0.25, 0.25, 0.25}),
            (std::vector<Item>{0, 1, 2, 3}));
  EXPECT_THROW(ranking_from_scores(std::vector<double>{0.1, std::nan("")}), std::invalid_argument);
}

}  // namespace
}  // namespace duelkit
