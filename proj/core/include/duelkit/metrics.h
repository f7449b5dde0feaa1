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

#ifndef DUELKIT_METRICS_H_
#define DUELKIT_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duelkit/agents.h"
#include "duelkit/env.h"

namespace duelkit {

// Per-duel record of one run. Every array has exactly `budget` entries;
// entry t-1 describes the state after duel t.
struct RunTrajectory {
  std::string agent;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  Item true_winner = 0;
  Item final_recommendation = 0;

  std::vector<std::uint32_t> cumulative_regret;
  std::vector<Item> recommended_item;
  std::vector<std::uint32_t> true_rank_of_reported;
  // Absent for agents without an internal ranking.
  std::vector<std::optional<std::uint32_t>> reported_rank_of_true;

  bool recovered() const { return final_recommendation == true_winner; }
  std::uint32_t final_true_rank() const { return true_rank_of_reported.back(); }
  std::optional<std::uint32_t> final_reported_rank() const {
    return reported_rank_of_true.back();
  }

  friend bool operator==(const RunTrajectory&, const RunTrajectory&) = default;
};

// 1 when a non-optimal item won the duel.
int regret_increment(const DuelObservation& obs, Item true_winner);

// Share of runs whose final recommendation is true_winner. Throws
// std::invalid_argument on an empty list.
double recovery_fraction(std::span<const RunTrajectory> runs, Item true_winner);
// Same, but each run is scored against its own recorded true winner.
double recovery_fraction(std::span<const RunTrajectory> runs);

// 1-based position of item in true_order. Throws std::invalid_argument if
// the item is absent.
std::uint32_t true_rank_of(Item item, std::span<const Item> true_order);

std::optional<std::uint32_t> reported_rank_of_true(
    Item true_winner, const std::optional<std::vector<Item>>& internal_ranking);

// Builds a RunTrajectory one duel at a time.
class TrajectoryRecorder {
 public:
  TrajectoryRecorder(const PreferenceEnvironment& env, std::string agent,
                     std::size_t budget, std::uint64_t seed);

  void record(const DuelObservation& obs, Item leader,
              const std::optional<std::vector<Item>>& ranking);
  RunTrajectory finish(Item final_recommendation) &&;

 private:
  const PreferenceEnvironment& env_;
  RunTrajectory traj_;
  std::uint32_t regret_ = 0;
};

}  // namespace duelkit

#endif  // DUELKIT_METRICS_H_
