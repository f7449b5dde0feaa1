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

#include "duelkit/rl.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "duelkit/errors.h"

namespace duelkit {
namespace {

TEST(RlState, EncodingIsABijectionOnFortyStates) {
  std::set<std::size_t> seen;
  for (std::uint8_t t = 0; t < 4; ++t)
    for (std::uint8_t g = 0; g < 5; ++g)
      for (bool c : {false, true}) {
        const RlState s{t, g, c};
        ASSERT_LT(s.index(), RlState::kCount);
        EXPECT_EQ(RlState::from_index(s.index()), s);
        seen.insert(s.index());
      }
  EXPECT_EQ(seen.size(), 40u);
  EXPECT_THROW(RlState::from_index(40), std::out_of_range);
}

TEST(RlState, Buckets) {
  EXPECT_EQ(time_bucket(1, 40), 0);
  EXPECT_EQ(time_bucket(11, 40), 1);
  EXPECT_EQ(time_bucket(40, 40), 3);
  EXPECT_EQ(gap_bucket(0.0), 0);
  EXPECT_EQ(gap_bucket(0.005), 1);
  EXPECT_EQ(gap_bucket(0.0499), 2);
  EXPECT_EQ(gap_bucket(0.05), 3);
  EXPECT_EQ(gap_bucket(0.5), 4);
  const RlState s = make_rl_state(21, 40, {0.1, 0.5, 0.4}, true);
  EXPECT_EQ(s, (RlState{2, 3, true}));
}

TEST(QUpdate, Examples) {
  QTable q(4);
  const RlState s{1, 2, false};
  q_update(q, s, {3}, 0.0, s, 0.1, 0.99);
  EXPECT_EQ(q.value(s, {3}), 0.0);
  q_update(q, s, {2}, 1.0, std::nullopt, 0.5, 0.0);
  EXPECT_EQ(q.value(s, {2}), 0.5);
  EXPECT_EQ(q.visits(s, {2}), 1u);
  EXPECT_THROW(q_update(q, s, {1}, 0.0, s, 0.1, 0.9), std::out_of_range);
  EXPECT_THROW(q_update(q, s, {5}, 0.0, s, 0.1, 0.9), std::out_of_range);
  EXPECT_THROW(q_update(q, s, {2}, 0.0, s, 0.0, 0.9), std::invalid_argument);
}

TEST(QUpdate, ReplayMatchesStraightLineOracle) {
  constexpr std::size_t kK = 5;
  Rng rng(1);
  QTable q(kK);
  std::vector<std::vector<double>> ref(40, std::vector<double>(kK + 1, 0.0));
  const double alpha = 0.1, gamma = 0.9;
  for (int step = 0; step < 1000; ++step) {
    const RlState s = RlState::from_index(rng.uniform_index(40));
    const std::size_t a = 2 + rng.uniform_index(kK - 1);
    const double r = rng.normal();
    const bool terminal = rng.uniform() < 0.1;
    const RlState n = RlState::from_index(rng.uniform_index(40));
    q_update(q, s, {a}, r, terminal ? std::nullopt : std::optional(n), alpha, gamma);
    double best = ref[n.index()][2];
    for (std::size_t b = 3; b <= kK; ++b) best = std::max(best, ref[n.index()][b]);
    const double target = r + (terminal ? 0.0 : gamma * best);
    ref[s.index()][a] += alpha * (target - ref[s.index()][a]);
  }
  for (std::size_t si = 0; si < 40; ++si)
    for (std::size_t a = 2; a <= kK; ++a)
      EXPECT_EQ(q.value(RlState::from_index(si), {a}), ref[si][a]);
}

TEST(Reward, Examples) {
  EXPECT_EQ(reward({0, 1, 0, 3}, 0, false, 0), 0.0);
  EXPECT_EQ(reward({0, 1, 1, 3}, 0, false, 0), -1.0);
  EXPECT_EQ(reward({0, 1, 0, 3}, 0, true, 0), 10.0);
  EXPECT_EQ(reward({0, 1, 1, 3}, 0, true, 0), 9.0);
  EXPECT_EQ(reward({0, 1, 0, 3}, 0, true, 2), 0.0);
}

TEST(RlSelectPair, GreedyCases) {
  QTable q(6);
  const RlState s{0, 0, false};
  const std::vector<Item> ranking{3, 1, 5, 0, 2, 4};
  Rng rng(2);
  EXPECT_EQ(rl_select_pair(q, s, ranking, true, 0.0, rng), (Pair{3, 1}));
  q.set_value(s, {5}, 0.7);
  EXPECT_EQ(rl_select_pair(q, s, ranking, true, 0.0, rng), (Pair{3, 2}));
  EXPECT_THROW(rl_select_pair(q, s, {0, 1}, true, 0.0, rng), std::invalid_argument);
}

TEST(RlSelectPair, FullExplorationIsUniformOverRanks) {
  constexpr std::size_t kK = 8;
  constexpr int kN = 10000;
  QTable q(kK);
  q.set_value({0, 0, false}, {4}, 3.0);
  Rng rng(3);
  std::vector<int> freq(kK + 1, 0);
  for (int n = 0; n < kN; ++n) ++freq[rl_select_action(q, {0, 0, false}, false, 1.0, rng).challenger_rank];
  const double p = 1.0 / (kK - 1);
  for (std::size_t r = 2; r <= kK; ++r)
    EXPECT_NEAR(freq[r], kN * p, 3 * std::sqrt(kN * p * (1 - p))) << r;
}

TEST(QTable, CsvRoundTrip) {
  QTable q(5);
  Rng rng(4);
  for (std::size_t si = 0; si < 40; ++si)
    for (std::size_t a = 2; a <= 5; ++a) q.set_value(RlState::from_index(si), {a}, rng.normal() * 1e3);
  std::stringstream buf;
  q.save_csv(buf);
  const QTable back = QTable::load_csv(buf);
  EXPECT_EQ(back, q);
}

TEST(QTable, CsvErrors) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(QTable::load_csv(bad_header), ParseError);
  std::istringstream bad_row(
      "t_bucket,gap_bucket,top_changed,challenger_rank,q\n0,0,0,2,1.0\n0,9,0,2,1\n");
  try {
    QTable::load_csv(bad_row);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

EnvSampler synthetic_sampler(std::size_t k, std::uint64_t seed) {
  return [=](std::size_t e) {
    return std::make_shared<const PreferenceEnvironment>(
        generate_synthetic(k, 0, mix_seed(seed, e)));
  };
}

TEST(TrainRl, ZeroEpisodesIsAnError) {
  EXPECT_THROW(train_rl(synthetic_sampler(5, 1), 0, 10, {}, 1), std::invalid_argument);
}

TEST(TrainRl, EpsilonSchedule) {
  const RlHyper h;
  EXPECT_DOUBLE_EQ(epsilon_for_episode(h, 0, 5000), 1.0);
  EXPECT_DOUBLE_EQ(epsilon_for_episode(h, 4999, 5000), 0.05);
  EXPECT_NEAR(epsilon_for_episode(h, 2500, 5001), 0.525, 1e-12);
}

TEST(TrainRl, Reproducible) {
  const QTable a = train_rl(synthetic_sampler(6, 7), 50, 15, {}, 9);
  const QTable b = train_rl(synthetic_sampler(6, 7), 50, 15, {}, 9);
  EXPECT_EQ(a, b);
  const QTable c = train_rl(synthetic_sampler(6, 7), 50, 15, {}, 10);
  EXPECT_FALSE(a == c);
}

TEST(TrainRl, CoverageAndBound) {
  constexpr std::size_t kK = 20, kB = 40, kEpisodes = 5000;
  const RlHyper h;
  const QTable q = train_rl(synthetic_sampler(kK, 11), kEpisodes, kB, h, 12);
  std::uint64_t total = 0;
  std::size_t visited_states = 0;
  for (std::size_t si = 0; si < 40; ++si) {
    std::uint64_t state_visits = 0;
    for (std::size_t a = 2; a <= kK; ++a) state_visits += q.visits(RlState::from_index(si), {a});
    visited_states += state_visits > 0;
    total += state_visits;
  }
  // One update per selection-phase duel.
  EXPECT_EQ(total, kEpisodes * (kB - (kK - 1)));
  EXPECT_GE(visited_states, 8u);
  EXPECT_LE(q.max_abs_value(), 11.0 / (1.0 - h.gamma));
  for (std::size_t si = 0; si < 40; ++si)
    for (std::size_t a = 2; a <= kK; ++a)
      EXPECT_TRUE(std::isfinite(q.value(RlState::from_index(si), {a})));
}

TEST(RlAgent, UsesPolicyAfterInitialization) {
  auto policy = std::make_shared<QTable>(5);
  for (std::size_t si = 0; si < 40; ++si) policy->set_value(RlState::from_index(si), {4}, 1.0);
  auto env = generate_synthetic(5, 0, 3);
  RlParwisAgent agent(5, 20, policy, Rng(4));
  Rng duels(5);
  for (std::size_t t = 1; t <= 20; ++t) {
    const bool init = agent.in_initialization();
    const Pair p = agent.select_pair(t);
    if (!init) {
      ASSERT_TRUE(agent.last_action().has_value());
      EXPECT_EQ(agent.last_action()->challenger_rank, 4u);
      EXPECT_EQ(p.second, (*agent.internal_ranking())[3]);
    } else {
      EXPECT_FALSE(agent.last_action().has_value());
    }
    agent.observe({p.first, p.second, duel(env, p.first, p.second, duels), t});
  }
  EXPECT_THROW(RlParwisAgent(4, 20, policy, Rng(1)), std::invalid_argument);
}

}  // namespace
}  // namespace duelkit
