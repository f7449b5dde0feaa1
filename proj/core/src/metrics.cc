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

#include "duelkit/metrics.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace duelkit {

int regret_increment(const DuelObservation& obs, Item true_winner) {
  return obs.winner != true_winner ? 1 : 0;
}

double recovery_fraction(std::span<const RunTrajectory> runs,
                         Item true_winner) {
  if (runs.empty()) throw std::invalid_argument("recovery_fraction: no runs");
  const auto hits = std::count_if(runs.begin(), runs.end(), [&](const auto& r) {
    return r.final_recommendation == true_winner;
  });
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

double recovery_fraction(std::span<const RunTrajectory> runs) {
  if (runs.empty()) throw std::invalid_argument("recovery_fraction: no runs");
  const auto hits = std::count_if(runs.begin(), runs.end(),
                                  [](const auto& r) { return r.recovered(); });
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

std::uint32_t true_rank_of(Item item, std::span<const Item> true_order) {
  const auto it = std::find(true_order.begin(), true_order.end(), item);
  if (it == true_order.end()) {
    throw std::invalid_argument("true_rank_of: item not in order");
  }
  return static_cast<std::uint32_t>(it - true_order.begin()) + 1;
}

std::optional<std::uint32_t> reported_rank_of_true(
    Item true_winner, const std::optional<std::vector<Item>>& internal_ranking) {
  if (!internal_ranking) return std::nullopt;
  return true_rank_of(true_winner, *internal_ranking);
}

TrajectoryRecorder::TrajectoryRecorder(const PreferenceEnvironment& env,
                                       std::string agent, std::size_t budget,
                                       std::uint64_t seed)
    : env_(env) {
  traj_.agent = std::move(agent);
  traj_.budget = budget;
  traj_.seed = seed;
  traj_.true_winner = env.true_winner();
  traj_.cumulative_regret.reserve(budget);
  traj_.recommended_item.reserve(budget);
  traj_.true_rank_of_reported.reserve(budget);
  traj_.reported_rank_of_true.reserve(budget);
}

void TrajectoryRecorder::record(
    const DuelObservation& obs, Item leader,
    const std::optional<std::vector<Item>>& ranking) {
  regret_ += static_cast<std::uint32_t>(regret_increment(obs, traj_.true_winner));
  traj_.cumulative_regret.push_back(regret_);
  traj_.recommended_item.push_back(leader);
  traj_.true_rank_of_reported.push_back(true_rank_of(leader, env_.true_order()));
  traj_.reported_rank_of_true.push_back(
      reported_rank_of_true(traj_.true_winner, ranking));
}

RunTrajectory TrajectoryRecorder::finish(Item final_recommendation) && {
  traj_.final_recommendation = final_recommendation;
  if (!traj_.true_rank_of_reported.empty()) {
    traj_.true_rank_of_reported.back() =
        true_rank_of(final_recommendation, env_.true_order());
    traj_.recommended_item.back() = final_recommendation;
  }
  return std::move(traj_);
}

}  // namespace duelkit
