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

#ifndef DUELKIT_RL_H_
#define DUELKIT_RL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duelkit/agents.h"
#include "duelkit/env.h"
#include "duelkit/parwis.h"
#include "duelkit/rng.h"

namespace duelkit {

// Tabular state for RL PARWiS: budget quartile, binned spectral gap between
// the top two items, and whether the top moved on the last observation.
struct RlState {
  static constexpr std::size_t kTimeBuckets = 4;
  static constexpr std::size_t kGapBuckets = 5;
  static constexpr std::size_t kCount = kTimeBuckets * kGapBuckets * 2;

  std::uint8_t t_bucket = 0;    // 0..3
  std::uint8_t gap_bucket = 0;  // 0..4
  bool top_changed = false;

  std::size_t index() const {
    return (t_bucket * kGapBuckets + gap_bucket) * 2 + (top_changed ? 1 : 0);
  }
  static RlState from_index(std::size_t index);

  friend bool operator==(const RlState&, const RlState&) = default;
};

// Position (2..k) in the current internal ranking of the item that will
// duel the top item.
struct RlAction {
  std::size_t challenger_rank = 2;
  friend bool operator==(const RlAction&, const RlAction&) = default;
};

// Quartile of duels already spent, 0..3. t is the 1-based index of the duel
// about to be played.
std::uint8_t time_bucket(std::size_t t, std::size_t budget);
// Bins pi[top1] - pi[top2] at edges 0.005, 0.02, 0.05, 0.1.
std::uint8_t gap_bucket(double gap);

RlState make_rl_state(std::size_t t, std::size_t budget,
                      const std::vector<double>& pi, bool top_changed);

class QTable {
 public:
  // Actions are challenger ranks 2..k.
  explicit QTable(std::size_t k);

  std::size_t k() const { return k_; }
  std::size_t action_count() const { return k_ - 1; }

  double value(const RlState& s, RlAction a) const;
  void set_value(const RlState& s, RlAction a, double v);
  std::uint64_t visits(const RlState& s, RlAction a) const;
  void add_visit(const RlState& s, RlAction a);

  double max_value(const RlState& s) const;
  // argmax over actions, ties to the smallest challenger rank.
  RlAction greedy_action(const RlState& s) const;
  double max_abs_value() const;

  // CSV: t_bucket,gap_bucket,top_changed,challenger_rank,q. One row per
  // (state, action), visit counts are not persisted.
  void save_csv(std::ostream& out) const;
  static QTable load_csv(std::istream& in);

  friend bool operator==(const QTable& a, const QTable& b) {
    return a.k_ == b.k_ && a.q_ == b.q_;
  }

 private:
  std::size_t slot(const RlState& s, RlAction a) const;

  std::size_t k_;
  std::vector<double> q_;
  std::vector<std::uint64_t> visits_;
};

// q[s,a] += alpha (r + gamma max_a' q[s',a'] - q[s,a]); a terminal
// transition (no next state) bootstraps from zero.
void q_update(QTable& q, const RlState& s, RlAction a, double r,
              const std::optional<RlState>& next, double alpha, double gamma);

struct RewardOptions {
  double terminal_bonus = 10.0;
};

// 0 when the true winner won the duel, -1 otherwise, plus the terminal
// bonus when the run ends on a correct recommendation.
double reward(const DuelObservation& obs, Item true_winner, bool terminal,
              Item recommended, const RewardOptions& options = {});

// Greedy (ties to the smallest rank) or epsilon-greedy over ranks 2..k.
RlAction rl_select_action(const QTable& q, const RlState& s, bool greedy,
                          double epsilon, Rng& rng);

// (ranking[0], ranking[rank - 1]) for the chosen action.
Pair rl_select_pair(const QTable& q, const RlState& s,
                    const std::vector<Item>& ranking, bool greedy,
                    double epsilon, Rng& rng);

// PARWiS skeleton with the challenger picked by a Q-table policy.
class RlParwisAgent final : public ParwisFamilyAgent {
 public:
  RlParwisAgent(std::size_t k, std::size_t budget,
                std::shared_ptr<const QTable> policy, Rng rng,
                double smoothing = 1.0, double epsilon = 0.0);

  std::string_view name() const override { return "rl"; }

  void set_epsilon(double epsilon) { epsilon_ = epsilon; }
  // State for the duel with 1-based index t.
  RlState state_at(std::size_t t) const;
  // Action behind the most recent selection-phase pair.
  const std::optional<RlAction>& last_action() const { return last_action_; }

 protected:
  Pair select_after_init(std::size_t t) override;

 private:
  std::size_t budget_;
  std::shared_ptr<const QTable> policy_;
  double epsilon_;
  std::optional<RlAction> last_action_;
};

struct RlHyper {
  double alpha = 0.1;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double terminal_bonus = 10.0;
  double smoothing = 1.0;
};

// Linear anneal from epsilon_start (first episode) to epsilon_end (last).
double epsilon_for_episode(const RlHyper& hyper, std::size_t episode,
                           std::size_t episodes);

// Environment for a given training episode. Must be deterministic.
using EnvSampler =
    std::function<std::shared_ptr<const PreferenceEnvironment>(std::size_t)>;

// Runs `episodes` budget-length PARWiS episodes with epsilon-greedy
// challenger choice and returns the learned table. Same inputs give the same
// table. Throws std::invalid_argument when episodes == 0.
QTable train_rl(const EnvSampler& sampler, std::size_t episodes,
                std::size_t budget, const RlHyper& hyper, std::uint64_t seed);

}  // namespace duelkit

#endif  // DUELKIT_RL_H_
