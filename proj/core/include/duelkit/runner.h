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

#ifndef DUELKIT_RUNNER_H_
#define DUELKIT_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "duelkit/agents.h"
#include "duelkit/datasets.h"
#include "duelkit/env.h"
#include "duelkit/metrics.h"
#include "duelkit/parwis.h"
#include "duelkit/rl.h"
#include "duelkit/stats.h"

namespace duelkit {

enum class AgentKind { kRandom, kDts, kParwis, kContextual, kRl };

std::string_view agent_name(AgentKind kind);
// Throws std::invalid_argument listing the valid names.
AgentKind parse_agent_kind(std::string_view name);
const std::vector<AgentKind>& all_agent_kinds();
bool is_parwis_family(AgentKind kind);

struct AgentOptions {
  double smoothing = 1.0;
  ContextualOptions contextual;
  // Required for AgentKind::kRl.
  std::shared_ptr<const QTable> policy;
};

std::unique_ptr<Agent> make_agent(AgentKind kind,
                                  const PreferenceEnvironment& env,
                                  std::size_t budget, Rng rng,
                                  const AgentOptions& options);

// The environment behind a hard budget: the (budget+1)-th duel throws
// BudgetExhaustedError.
class DuelOracle {
 public:
  DuelOracle(const PreferenceEnvironment& env, std::size_t budget, Rng rng);

  Item duel(Pair pair);
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return budget_ - used_; }

 private:
  const PreferenceEnvironment& env_;
  std::size_t budget_;
  std::size_t used_ = 0;
  Rng rng_;
};

// Streams derived from a run seed: the agent's own randomness and the duel
// outcomes never share draws.
inline constexpr std::uint64_t kAgentStream = 1;
inline constexpr std::uint64_t kDuelStream = 2;

// Plays exactly `budget` duels and records metrics after each one.
RunTrajectory run_single(const PreferenceEnvironment& env, Agent& agent,
                         std::size_t budget, Rng duel_rng,
                         std::uint64_t run_seed);

// Builds the agent from its kind with stream split(run_seed, kAgentStream)
// and duels with split(run_seed, kDuelStream).
RunTrajectory run_single(const PreferenceEnvironment& env, AgentKind kind,
                         std::size_t budget, std::uint64_t run_seed,
                         const AgentOptions& options = {});

struct RlConfig {
  std::size_t episodes = 5000;
  RlHyper hyper;
};

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::kSynthetic;
  std::optional<std::filesystem::path> dataset_path;
  std::size_t k = 20;
  std::size_t feature_dim = 5;  // synthetic only
  std::vector<std::size_t> budgets{40, 60, 80};
  std::size_t runs = 30;
  std::uint64_t seed = 0;
  std::uint64_t selection_seed = 0;  // Jester item sample
  std::vector<AgentKind> agents = all_agent_kinds();
  RlConfig rl;
  double logistic_scale = 1.0;
  double smoothing = 1.0;
  std::filesystem::path output_dir = "results";
  std::size_t workers = 1;

  // Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

// Overlays keys present in a JSON object onto config. Unknown keys are an
// error. Keys mirror the CLI flags with underscores (data_path, rl_episodes).
void apply_config_json(std::string_view json_text, ExperimentConfig& config);

// Positional seed: a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view dataset,
                          std::string_view agent, std::size_t budget,
                          std::size_t run);

// Where runs get their environments and RL training episodes get theirs.
struct ExperimentData {
  std::string label;
  std::function<std::shared_ptr<const PreferenceEnvironment>(std::size_t run)>
      for_run;
  std::function<EnvSampler(std::size_t budget)> rl_sampler;
};

// Synthetic: one environment per run index (shared by all agents and
// budgets) and fresh environments per training episode. Real datasets: the
// loaded 20-item environment everywhere.
ExperimentData load_experiment_data(const ExperimentConfig& config);

// Fixed environment for every run and training episode.
ExperimentData fixed_experiment_data(
    std::shared_ptr<const PreferenceEnvironment> env);

struct RunRecord {
  std::size_t run = 0;
  double delta12 = 0.0;
  RunTrajectory trajectory;
};

struct ResultCell {
  std::string dataset;
  AgentKind agent = AgentKind::kRandom;
  std::size_t budget = 0;
  std::vector<RunRecord> runs;
};

struct ResultsTable {
  std::vector<ResultCell> cells;
  // One row per (cell, run, duel).
  std::size_t row_count() const;
};

struct SummaryRow {
  std::string dataset;
  AgentKind agent = AgentKind::kRandom;
  std::size_t budget = 0;
  double recovery_fraction = 0.0;
  double mean_true_rank = 0.0;
  std::optional<double> mean_reported_rank;
  double mean_cum_regret = 0.0;
  double failure_rate = 0.0;
  std::optional<double> avg_true_rank_on_failure;
  double delta12_mean = 0.0;
  double delta12_std = 0.0;
};

struct TTestRow {
  std::string dataset;
  std::size_t budget = 0;
  AgentKind agent_a = AgentKind::kRandom;
  AgentKind agent_b = AgentKind::kRandom;
  std::string metric;  // recovery, cum_regret or true_rank (final values)
  TTestResult result;
};

std::vector<SummaryRow> summarize(const ResultsTable& results);
std::vector<TTestRow> pairwise_ttests(const ResultsTable& results);

using ProgressFn = std::function<void(std::string_view)>;

// Cells run on config.workers threads; output is independent of scheduling.
ResultsTable run_experiment(const ExperimentConfig& config,
                            const ProgressFn& progress = {});
ResultsTable run_experiment(const ExperimentConfig& config,
                            const ExperimentData& data,
                            const ProgressFn& progress = {});

// Trains the RL PARWiS policy for one budget the way run_experiment does.
QTable train_policy(const ExperimentConfig& config, const ExperimentData& data,
                    std::size_t budget);

void write_trajectories_csv(const ResultsTable& results, std::ostream& out);
void write_summary_csv(const ResultsTable& results, std::ostream& out);
void write_ttests_csv(const ResultsTable& results, std::ostream& out);

// trajectories.csv, summary.csv and ttests.csv under output_dir (created if
// missing). Returns the written paths.
std::vector<std::filesystem::path> emit_results(
    const ResultsTable& results, const std::filesystem::path& output_dir);

// Runs fn(0..n-1) on up to `workers` threads; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace duelkit

#endif  // DUELKIT_RUNNER_H_
