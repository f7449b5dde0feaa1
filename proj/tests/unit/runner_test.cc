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

#include "duelkit/runner.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "duelkit/errors.h"

namespace duelkit {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("duelkit_runner_" + name);
  fs::remove_all(p);
  return p;
}

TEST(AgentKinds, ParseAndNames) {
  for (AgentKind k : all_agent_kinds()) EXPECT_EQ(parse_agent_kind(agent_name(k)), k);
  try {
    parse_agent_kind("rucb");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("random, dts, parwis, contextual, rl"),
              std::string::npos);
  }
  EXPECT_TRUE(is_parwis_family(AgentKind::kRl));
  EXPECT_FALSE(is_parwis_family(AgentKind::kDts));
}

TEST(DuelOracle, RefusesPastBudget) {
  auto env = generate_synthetic(4, 0, 1);
  DuelOracle oracle(env, 3, Rng(2));
  for (int n = 0; n < 3; ++n) oracle.duel({0, 1});
  EXPECT_EQ(oracle.remaining(), 0u);
  EXPECT_THROW(oracle.duel({0, 1}), BudgetExhaustedError);
}

TEST(RunSingle, LengthsAndDeterminism) {
  auto env = generate_synthetic(8, 3, 5);
  AgentOptions opts;
  opts.policy = std::make_shared<QTable>(8);
  for (AgentKind kind : all_agent_kinds()) {
    const RunTrajectory a = run_single(env, kind, 20, 99, opts);
    const RunTrajectory b = run_single(env, kind, 20, 99, opts);
    EXPECT_EQ(a, b) << agent_name(kind);
    EXPECT_EQ(a.cumulative_regret.size(), 20u);
    EXPECT_EQ(a.recommended_item.size(), 20u);
    EXPECT_EQ(a.true_rank_of_reported.size(), 20u);
    EXPECT_EQ(a.reported_rank_of_true.size(), 20u);
    EXPECT_EQ(a.reported_rank_of_true.back().has_value(), is_parwis_family(kind));
    EXPECT_EQ(a.agent, agent_name(kind));
    for (std::size_t t = 0; t < 20; ++t) {
      const std::uint32_t prev = t ? a.cumulative_regret[t - 1] : 0;
      EXPECT_LE(a.cumulative_regret[t] - prev, 1u);
      EXPECT_LE(a.cumulative_regret[t], t + 1);
    }
  }
}

TEST(RunSingle, PureInitializationBudget) {
  auto env = generate_synthetic(6, 0, 7);
  const RunTrajectory t = run_single(env, AgentKind::kParwis, 5, 3);
  EXPECT_EQ(t.cumulative_regret.size(), 5u);
  EXPECT_THROW(run_single(env, AgentKind::kParwis, 4, 3), std::invalid_argument);
  EXPECT_NO_THROW(run_single(env, AgentKind::kRandom, 1, 3));
}

TEST(RunSingle, RlNeedsPolicy) {
  auto env = generate_synthetic(6, 0, 7);
  EXPECT_THROW(run_single(env, AgentKind::kRl, 10, 3), std::invalid_argument);
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.k = 6;
  c.feature_dim = 2;
  c.budgets = {12};
  c.runs = 3;
  c.seed = 17;
  c.rl.episodes = 20;
  return c;
}

TEST(RunExperiment, CountsRows) {
  ExperimentConfig c;
  c.runs = 1;
  c.agents = {AgentKind::kRandom};
  c.budgets = {40};
  const ResultsTable r = run_experiment(c);
  EXPECT_EQ(r.row_count(), 40u);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].dataset, "synthetic");
}

TEST(RunExperiment, ShapeAndAggregates) {
  ExperimentConfig c = small_config();
  c.budgets = {6, 9};
  const ResultsTable r = run_experiment(c);
  EXPECT_EQ(r.row_count(), 5u * (6 + 9) * 3);
  const auto summary = summarize(r);
  EXPECT_EQ(summary.size(), 10u);
  for (const auto& s : summary) {
    EXPECT_EQ(s.mean_reported_rank.has_value(), is_parwis_family(s.agent));
    EXPECT_EQ(s.failure_rate + s.recovery_fraction, 1.0);
    EXPECT_GT(s.delta12_std, 0.0);
  }
  // 10 agent pairs, 2 budgets, 3 metrics.
  EXPECT_EQ(pairwise_ttests(r).size(), 60u);
}

TEST(RunExperiment, FixedEnvironmentHasZeroDeltaSpread) {
  auto env = std::make_shared<const PreferenceEnvironment>(generate_synthetic(6, 0, 3));
  ExperimentConfig c = small_config();
  c.agents = {AgentKind::kRandom, AgentKind::kParwis};
  const ResultsTable r = run_experiment(c, fixed_experiment_data(env));
  for (const auto& s : summarize(r)) {
    EXPECT_EQ(s.delta12_std, 0.0);
    EXPECT_DOUBLE_EQ(s.delta12_mean, delta12(*env));
  }
}

TEST(RunExperiment, WorkerCountDoesNotChangeOutput) {
  ExperimentConfig c = small_config();
  const ResultsTable serial = run_experiment(c);
  c.workers = 3;
  const ResultsTable parallel = run_experiment(c);
  std::ostringstream a, b;
  write_trajectories_csv(serial, a);
  write_trajectories_csv(parallel, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperiment, AgentSubsetDoesNotChangeOtherCells) {
  ExperimentConfig c = small_config();
  c.agents = {AgentKind::kParwis, AgentKind::kDts};
  const ResultsTable both = run_experiment(c);
  c.agents = {AgentKind::kDts};
  const ResultsTable one = run_experiment(c);
  ASSERT_EQ(one.cells.size(), 1u);
  EXPECT_EQ(one.cells[0].runs[2].trajectory, both.cells[1].runs[2].trajectory);
}

TEST(RunExperiment, MissingDatasetFileNamesPath) {
  ExperimentConfig c = small_config();
  c.dataset = DatasetKind::kMovieLens;
  c.dataset_path = "/no/such/ratings.csv";
  try {
    run_experiment(c);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("/no/such/ratings.csv"), std::string::npos);
  }
}

TEST(DeriveSeed, Positional) {
  std::set<std::uint64_t> seen;
  for (std::string_view a : {"random", "parwis"})
    for (std::size_t b : {40, 60})
      for (std::size_t r = 0; r < 30; ++r) seen.insert(derive_seed(1, "synthetic", a, b, r));
  EXPECT_EQ(seen.size(), 120u);
  EXPECT_EQ(derive_seed(1, "jester", "dts", 40, 3), derive_seed(1, "jester", "dts", 40, 3));
  EXPECT_NE(derive_seed(1, "jester", "dts", 40, 3), derive_seed(2, "jester", "dts", 40, 3));
}

TEST(EmitResults, HeadersOnlyForEmptyTable) {
  const fs::path dir = scratch_dir("empty");
  const auto files = emit_results(ResultsTable{}, dir);
  EXPECT_EQ(files.size(), 3u);
  EXPECT_EQ(slurp(dir / "trajectories.csv"),
            "dataset,agent,budget,run,duel,cum_regret,recovered,true_rank,reported_rank\n");
  EXPECT_EQ(slurp(dir / "summary.csv"),
            "dataset,agent,budget,recovery_fraction,mean_true_rank,mean_reported_rank,"
            "mean_cum_regret,failure_rate,avg_true_rank_on_failure,delta12_mean,"
            "delta12_std\n");
  EXPECT_EQ(slurp(dir / "ttests.csv"),
            "dataset,budget,agent_a,agent_b,metric,t_stat,p_value,df\n");
  fs::remove_all(dir);
}

TEST(EmitResults, SingleRunRowCountAndReemission) {
  ExperimentConfig c = small_config();
  c.runs = 1;
  c.agents = {AgentKind::kRandom};
  const ResultsTable r = run_experiment(c);
  const fs::path d1 = scratch_dir("a"), d2 = scratch_dir("b");
  emit_results(r, d1);
  emit_results(r, d2);
  const std::string traj = slurp(d1 / "trajectories.csv");
  EXPECT_EQ(std::count(traj.begin(), traj.end(), '\n'), 12 + 1);
  EXPECT_NE(traj.find("\nsynthetic,random,12,0,1,"), std::string::npos);
  // Random has no internal ranking: last field empty.
  EXPECT_EQ(traj.substr(traj.size() - 2), ",\n");
  for (const char* f : {"trajectories.csv", "summary.csv", "ttests.csv"})
    EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(EmitResults, UnwritablePathThrows) {
  const fs::path file = scratch_dir("file");
  std::ofstream(file) << "x";
  EXPECT_ANY_THROW(emit_results(ResultsTable{}, file / "sub"));
  fs::remove_all(file);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.budgets = {10};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.agents = {AgentKind::kRandom, AgentKind::kDts};
  EXPECT_NO_THROW(c.validate());
  c.runs = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.dataset = DatasetKind::kJester;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.agents = {AgentKind::kDts, AgentKind::kDts};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, Json) {
  ExperimentConfig c;
  apply_config_json(R"({"dataset": "movielens", "data_path": "r.csv", "budgets": [60],
                        "runs": 5, "agents": "random,parwis", "rl_episodes": 10,
                        "logistic_scale": 2.5, "workers": 2})",
                    c);
  EXPECT_EQ(c.dataset, DatasetKind::kMovieLens);
  EXPECT_EQ(*c.dataset_path, fs::path("r.csv"));
  EXPECT_EQ(c.budgets, (std::vector<std::size_t>{60}));
  EXPECT_EQ(c.runs, 5u);
  EXPECT_EQ(c.agents, (std::vector<AgentKind>{AgentKind::kRandom, AgentKind::kParwis}));
  EXPECT_EQ(c.rl.episodes, 10u);
  EXPECT_EQ(c.logistic_scale, 2.5);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_THROW(apply_config_json(R"({"colour": 1})", c), std::invalid_argument);
  EXPECT_THROW(apply_config_json(R"({"runs": "many"})", c), std::invalid_argument);
  EXPECT_THROW(apply_config_json("[1,2]", c), std::invalid_argument);
  EXPECT_THROW(apply_config_json("{", c), std::invalid_argument);
}

TEST(ParallelFor, RunsEveryIndexAndRethrows) {
  std::vector<int> hit(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

}  // namespace
}  // namespace duelkit
