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

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "duelkit/errors.h"

namespace duelkit {

std::string_view agent_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::kRandom:
      return "random";
    case AgentKind::kDts:
      return "dts";
    case AgentKind::kParwis:
      return "parwis";
    case AgentKind::kContextual:
      return "contextual";
    case AgentKind::kRl:
      return "rl";
  }
  return "unknown";
}

AgentKind parse_agent_kind(std::string_view name) {
  for (AgentKind kind : all_agent_kinds()) {
    if (agent_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown agent '" + std::string(name) +
                              "' (valid: random, dts, parwis, contextual, rl)");
}

const std::vector<AgentKind>& all_agent_kinds() {
  static const std::vector<AgentKind> kinds{
      AgentKind::kRandom, AgentKind::kDts, AgentKind::kParwis,
      AgentKind::kContextual, AgentKind::kRl};
  return kinds;
}

bool is_parwis_family(AgentKind kind) {
  return kind == AgentKind::kParwis || kind == AgentKind::kContextual ||
         kind == AgentKind::kRl;
}

std::unique_ptr<Agent> make_agent(AgentKind kind,
                                  const PreferenceEnvironment& env,
                                  std::size_t budget, Rng rng,
                                  const AgentOptions& options) {
  const std::size_t k = env.k();
  switch (kind) {
    case AgentKind::kRandom:
      return std::make_unique<RandomAgent>(k, std::move(rng));
    case AgentKind::kDts:
      return std::make_unique<DoubleThompsonAgent>(k, std::move(rng));
    case AgentKind::kParwis:
      return std::make_unique<ParwisAgent>(k, std::move(rng),
                                           options.smoothing);
    case AgentKind::kContextual: {
      ContextualOptions ctx = options.contextual;
      ctx.smoothing = options.smoothing;
      return std::make_unique<ContextualParwisAgent>(k, env.features(),
                                                     std::move(rng), ctx);
    }
    case AgentKind::kRl:
      if (!options.policy) {
        throw std::invalid_argument("make_agent: rl agent needs a policy");
      }
      return std::make_unique<RlParwisAgent>(k, budget, options.policy,
                                             std::move(rng), options.smoothing);
  }
  throw std::invalid_argument("make_agent: unknown agent kind");
}

DuelOracle::DuelOracle(const PreferenceEnvironment& env, std::size_t budget,
                       Rng rng)
    : env_(env), budget_(budget), rng_(std::move(rng)) {}

Item DuelOracle::duel(Pair pair) {
  if (used_ >= budget_) {
    throw BudgetExhaustedError("duel requested after the budget of " +
                               std::to_string(budget_) + " was spent");
  }
  ++used_;
  return duelkit::duel(env_, pair.first, pair.second, rng_);
}

RunTrajectory run_single(const PreferenceEnvironment& env, Agent& agent,
                         std::size_t budget, Rng duel_rng,
                         std::uint64_t run_seed) {
  if (budget == 0) throw std::invalid_argument("run_single: budget must be >= 1");
  if (agent.k() != env.k()) {
    throw std::invalid_argument("run_single: agent and environment disagree on k");
  }
  DuelOracle oracle(env, budget, std::move(duel_rng));
  TrajectoryRecorder recorder(env, std::string(agent.name()), budget, run_seed);
  for (std::size_t t = 1; t <= budget; ++t) {
    const Pair pair = agent.select_pair(t);
    if (pair.first == pair.second) {
      throw std::logic_error("agent selected a self-pair");
    }
    const Item winner = oracle.duel(pair);
    const DuelObservation obs{pair.first, pair.second, winner, t};
    agent.observe(obs);
    recorder.record(obs, agent.current_leader(), agent.internal_ranking());
  }
  return std::move(recorder).finish(agent.recommend());
}

RunTrajectory run_single(const PreferenceEnvironment& env, AgentKind kind,
                         std::size_t budget, std::uint64_t run_seed,
                         const AgentOptions& options) {
  if (is_parwis_family(kind) && budget + 1 < env.k()) {
    throw std::invalid_argument(
        "run_single: PARWiS-family agents need budget >= k - 1");
  }
  const Rng root(run_seed);
  auto agent = make_agent(kind, env, budget, root.split(kAgentStream), options);
  return run_single(env, *agent, budget, root.split(kDuelStream), run_seed);
}

void ExperimentConfig::validate() const {
  if (k < 2) throw std::invalid_argument("config: k must be >= 2");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (budgets.empty()) throw std::invalid_argument("config: no budgets");
  if (agents.empty()) throw std::invalid_argument("config: no agents");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (!(logistic_scale > 0.0)) {
    throw std::invalid_argument("config: logistic-scale must be > 0");
  }
  if (!(smoothing >= 0.0)) {
    throw std::invalid_argument("config: smoothing must be >= 0");
  }
  std::set<AgentKind> seen;
  bool family = false;
  for (AgentKind a : agents) {
    if (!seen.insert(a).second) {
      throw std::invalid_argument("config: agent '" +
                                  std::string(agent_name(a)) + "' listed twice");
    }
    family = family || is_parwis_family(a);
  }
  for (std::size_t b : budgets) {
    if (b < 1) throw std::invalid_argument("config: budgets must be >= 1");
    if (family && b + 1 < k) {
      throw std::invalid_argument("config: budget " + std::to_string(b) +
                                  " is below k - 1 = " + std::to_string(k - 1) +
                                  " required by PARWiS-family agents");
    }
  }
  if (seen.count(AgentKind::kRl) && rl.episodes < 1) {
    throw std::invalid_argument("config: rl-episodes must be >= 1");
  }
  if (dataset != DatasetKind::kSynthetic && !dataset_path) {
    throw std::invalid_argument("config: dataset '" +
                                std::string(dataset_name(dataset)) +
                                "' needs --data-path");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view dataset,
                          std::string_view agent, std::size_t budget,
                          std::size_t run) {
  std::uint64_t h = mix_seed(seed, hash_string(dataset));
  h = mix_seed(h, hash_string(agent));
  h = mix_seed(h, budget);
  return mix_seed(h, run);
}

ExperimentData load_experiment_data(const ExperimentConfig& config) {
  ExperimentData data;
  data.label = std::string(dataset_name(config.dataset));
  if (config.dataset == DatasetKind::kSynthetic) {
    std::vector<std::shared_ptr<const PreferenceEnvironment>> envs;
    envs.reserve(config.runs);
    for (std::size_t r = 0; r < config.runs; ++r) {
      envs.push_back(std::make_shared<const PreferenceEnvironment>(
          generate_synthetic(config.k, config.feature_dim,
                             derive_seed(config.seed, data.label, "env", 0, r))));
    }
    data.for_run = [envs = std::move(envs), config](std::size_t run) {
      if (run < envs.size()) return envs[run];
      return std::make_shared<const PreferenceEnvironment>(generate_synthetic(
          config.k, config.feature_dim,
          derive_seed(config.seed, "synthetic", "env", 0, run)));
    };
    const std::size_t k = config.k;
    const std::size_t d = config.feature_dim;
    const std::uint64_t seed = config.seed;
    data.rl_sampler = [k, d, seed](std::size_t budget) -> EnvSampler {
      return [k, d, seed, budget](std::size_t episode) {
        return std::make_shared<const PreferenceEnvironment>(generate_synthetic(
            k, d, derive_seed(seed, "synthetic", "rl-train", budget, episode)));
      };
    };
    return data;
  }

  const std::filesystem::path& path = *config.dataset_path;
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("dataset file not found: " + path.string());
  }
  const RatingsTable table = config.dataset == DatasetKind::kJester
                                 ? load_jester(path)
                                 : load_movielens(path);
  const RatingsTable chosen =
      select_items(table, config.dataset, config.k, config.selection_seed);
  auto env = std::make_shared<const PreferenceEnvironment>(
      make_ratings_environment(chosen, config.logistic_scale, data.label));
  ExperimentData fixed = fixed_experiment_data(std::move(env));
  fixed.label = data.label;
  return fixed;
}

ExperimentData fixed_experiment_data(
    std::shared_ptr<const PreferenceEnvironment> env) {
  ExperimentData data;
  data.label = env->label();
  data.for_run = [env](std::size_t) { return env; };
  data.rl_sampler = [env](std::size_t) -> EnvSampler {
    return [env](std::size_t) { return env; };
  };
  return data;
}

std::size_t ResultsTable::row_count() const {
  std::size_t n = 0;
  for (const ResultCell& c : cells) {
    for (const RunRecord& r : c.runs) n += r.trajectory.budget;
  }
  return n;
}

namespace {

std::vector<RunTrajectory> trajectories_of(const ResultCell& cell) {
  std::vector<RunTrajectory> out;
  out.reserve(cell.runs.size());
  for (const RunRecord& r : cell.runs) out.push_back(r.trajectory);
  return out;
}

std::vector<double> final_metric(const ResultCell& cell,
                                 std::string_view metric) {
  std::vector<double> v;
  v.reserve(cell.runs.size());
  for (const RunRecord& r : cell.runs) {
    const RunTrajectory& t = r.trajectory;
    if (metric == "recovery") {
      v.push_back(t.recovered() ? 1.0 : 0.0);
    } else if (metric == "cum_regret") {
      v.push_back(t.cumulative_regret.back());
    } else {
      v.push_back(t.final_true_rank());
    }
  }
  return v;
}

}  // namespace

std::vector<SummaryRow> summarize(const ResultsTable& results) {
  std::vector<SummaryRow> rows;
  for (const ResultCell& cell : results.cells) {
    if (cell.runs.empty()) continue;
    const std::vector<RunTrajectory> trajs = trajectories_of(cell);
    SummaryRow row;
    row.dataset = cell.dataset;
    row.agent = cell.agent;
    row.budget = cell.budget;
    row.recovery_fraction = recovery_fraction(trajs);
    std::vector<double> true_rank, reported, regret, deltas;
    bool all_reported = true;
    for (const RunRecord& r : cell.runs) {
      true_rank.push_back(r.trajectory.final_true_rank());
      regret.push_back(r.trajectory.cumulative_regret.back());
      deltas.push_back(r.delta12);
      const auto rep = r.trajectory.final_reported_rank();
      if (rep) {
        reported.push_back(*rep);
      } else {
        all_reported = false;
      }
    }
    row.mean_true_rank = mean(true_rank);
    if (all_reported) row.mean_reported_rank = mean(reported);
    row.mean_cum_regret = mean(regret);
    const ErrorAnalysis ea = error_analysis(trajs);
    row.failure_rate = ea.failure_rate;
    row.avg_true_rank_on_failure = ea.avg_true_rank_on_failure;
    row.delta12_mean = mean(deltas);
    row.delta12_std = sample_stddev(deltas);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TTestRow> pairwise_ttests(const ResultsTable& results) {
  static constexpr std::string_view kMetrics[] = {"recovery", "cum_regret",
                                                  "true_rank"};
  std::vector<TTestRow> rows;
  // Groups in first-appearance order of (dataset, budget).
  std::vector<std::pair<std::string, std::size_t>> groups;
  for (const ResultCell& c : results.cells) {
    const auto key = std::make_pair(c.dataset, c.budget);
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) {
      groups.push_back(key);
    }
  }
  for (const auto& [dataset, budget] : groups) {
    std::vector<const ResultCell*> members;
    for (const ResultCell& c : results.cells) {
      if (c.dataset == dataset && c.budget == budget && c.runs.size() >= 2) {
        members.push_back(&c);
      }
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        for (std::string_view metric : kMetrics) {
          const auto xa = final_metric(*members[a], metric);
          const auto xb = final_metric(*members[b], metric);
          rows.push_back({dataset, budget, members[a]->agent,
                          members[b]->agent, std::string(metric),
                          welch_t_test(xa, xb)});
        }
      }
    }
  }
  return rows;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::min(workers, n);
    for (std::size_t w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

QTable train_policy(const ExperimentConfig& config, const ExperimentData& data,
                    std::size_t budget) {
  RlHyper hyper = config.rl.hyper;
  hyper.smoothing = config.smoothing;
  return train_rl(data.rl_sampler(budget), config.rl.episodes, budget, hyper,
                  derive_seed(config.seed, data.label, "rl-train", budget, 0));
}

ResultsTable run_experiment(const ExperimentConfig& config,
                            const ProgressFn& progress) {
  config.validate();
  return run_experiment(config, load_experiment_data(config), progress);
}

ResultsTable run_experiment(const ExperimentConfig& config,
                            const ExperimentData& data,
                            const ProgressFn& progress) {
  config.validate();
  const bool wants_rl = std::find(config.agents.begin(), config.agents.end(),
                                  AgentKind::kRl) != config.agents.end();

  std::vector<std::shared_ptr<const QTable>> policies(config.budgets.size());
  if (wants_rl) {
    if (progress) progress("training RL PARWiS policies");
    parallel_for(config.budgets.size(), config.workers, [&](std::size_t b) {
      policies[b] = std::make_shared<const QTable>(
          train_policy(config, data, config.budgets[b]));
    });
  }

  ResultsTable results;
  for (AgentKind agent : config.agents) {
    for (std::size_t budget : config.budgets) {
      ResultCell cell;
      cell.dataset = data.label;
      cell.agent = agent;
      cell.budget = budget;
      cell.runs.resize(config.runs);
      results.cells.push_back(std::move(cell));
    }
  }
  if (progress) {
    progress("running " + std::to_string(results.cells.size() * config.runs) +
             " runs");
  }

  const std::size_t per_agent = config.budgets.size();
  parallel_for(results.cells.size() * config.runs, config.workers,
               [&](std::size_t job) {
                 const std::size_t c = job / config.runs;
                 const std::size_t run = job % config.runs;
                 ResultCell& cell = results.cells[c];
                 const auto env = data.for_run(run);
                 AgentOptions options;
                 options.smoothing = config.smoothing;
                 if (cell.agent == AgentKind::kRl) {
                   options.policy = policies[c % per_agent];
                 }
                 const std::uint64_t seed =
                     derive_seed(config.seed, data.label,
                                 agent_name(cell.agent), cell.budget, run);
                 RunRecord& rec = cell.runs[run];
                 rec.run = run;
                 rec.delta12 = delta12(*env);
                 rec.trajectory =
                     run_single(*env, cell.agent, cell.budget, seed, options);
               });
  return results;
}

}  // namespace duelkit
