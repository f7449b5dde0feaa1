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

// duelkit command line: run experiments, print delta_12, train RL policies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "duelkit/datasets.h"
#include "duelkit/env.h"
#include "duelkit/rl.h"
#include "duelkit/runner.h"
#include "duelkit/stats.h"

namespace {

using namespace duelkit;

// Raw flag values; applied over the (optional) config file only when given.
struct Flags {
  std::string config_file;
  std::string dataset;
  std::string data_path;
  std::vector<std::size_t> budgets;
  std::size_t budget = 40;
  std::size_t runs = 30;
  std::uint64_t seed = 0;
  std::uint64_t selection_seed = 0;
  std::string agents;
  std::string out;
  std::size_t k = 20;
  std::size_t feature_dim = 5;
  double logistic_scale = 1.0;
  double smoothing = 1.0;
  std::size_t rl_episodes = 5000;
  std::size_t workers = 1;
  bool quiet = false;
};

struct Registered {
  std::vector<std::pair<std::string, CLI::Option*>> opts;
  bool given(const std::string& name) const {
    for (const auto& [n, o] : opts)
      if (n == name) return o->count() > 0;
    return false;
  }
};

void add_common(CLI::App* app, Flags& f, Registered& r) {
  r.opts.emplace_back("config", app->add_option("--config", f.config_file, "JSON config file; flags win"));
  r.opts.emplace_back("dataset", app->add_option("--dataset", f.dataset, "synthetic|jester|movielens"));
  r.opts.emplace_back("data-path", app->add_option("--data-path", f.data_path, "ratings file"));
  r.opts.emplace_back("seed", app->add_option("--seed", f.seed, "master seed"));
  r.opts.emplace_back("selection-seed",
                      app->add_option("--selection-seed", f.selection_seed, "Jester item sample seed"));
  r.opts.emplace_back("k", app->add_option("--k", f.k, "number of items"));
  r.opts.emplace_back("feature-dim", app->add_option("--feature-dim", f.feature_dim, "synthetic feature dimension"));
  r.opts.emplace_back("logistic-scale",
                      app->add_option("--logistic-scale", f.logistic_scale, "rating-difference scale"));
  r.opts.emplace_back("runs", app->add_option("--runs", f.runs, "runs per (agent, budget)"));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

std::vector<AgentKind> parse_agents(const std::string& list) {
  std::vector<AgentKind> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) out.push_back(parse_agent_kind(name));
  }
  return out;
}

ExperimentConfig build_config(const Flags& f, const Registered& r) {
  ExperimentConfig c;
  if (r.given("config")) apply_config_json(slurp(f.config_file), c);
  if (r.given("dataset")) c.dataset = parse_dataset_kind(f.dataset);
  if (r.given("data-path")) c.dataset_path = f.data_path;
  if (r.given("seed")) c.seed = f.seed;
  if (r.given("selection-seed")) c.selection_seed = f.selection_seed;
  if (r.given("k")) c.k = f.k;
  if (r.given("feature-dim")) c.feature_dim = f.feature_dim;
  if (r.given("logistic-scale")) c.logistic_scale = f.logistic_scale;
  if (r.given("runs")) c.runs = f.runs;
  if (r.given("budgets")) c.budgets = f.budgets;
  if (r.given("budget")) c.budgets = {f.budget};
  if (r.given("agents")) c.agents = parse_agents(f.agents);
  if (r.given("out")) c.output_dir = f.out;
  if (r.given("smoothing")) c.smoothing = f.smoothing;
  if (r.given("rl-episodes")) c.rl.episodes = f.rl_episodes;
  if (r.given("workers")) c.workers = f.workers;
  return c;
}

int cmd_run(const Flags& f, const Registered& r) {
  const ExperimentConfig c = build_config(f, r);
  c.validate();
  ProgressFn progress;
  if (!f.quiet) progress = [](std::string_view msg) { std::cerr << msg << '\n'; };
  const ResultsTable results = run_experiment(c, progress);
  for (const auto& p : emit_results(results, c.output_dir)) std::cout << p.string() << '\n';
  return 0;
}

int cmd_delta(const Flags& f, const Registered& r) {
  ExperimentConfig c = build_config(f, r);
  c.agents = {AgentKind::kRandom};
  c.validate();
  const ExperimentData data = load_experiment_data(c);
  std::vector<double> d;
  const std::size_t n = c.dataset == DatasetKind::kSynthetic ? c.runs : 1;
  for (std::size_t run = 0; run < n; ++run) d.push_back(delta12(*data.for_run(run)));
  if (d.size() == 1) {
    std::printf("%s delta12 %.6f\n", data.label.c_str(), d[0]);
  } else {
    std::printf("%s delta12 %.6f +- %.6f over %zu environments\n", data.label.c_str(), mean(d),
                sample_stddev(d), d.size());
  }
  return 0;
}

int cmd_train_rl(const Flags& f, const Registered& r) {
  ExperimentConfig c = build_config(f, r);
  c.agents = {AgentKind::kRl};
  if (c.budgets.size() != 1) throw std::invalid_argument("train-rl takes a single --budget");
  if (!r.given("out")) throw std::invalid_argument("train-rl needs --out policy.csv");
  c.validate();
  const ExperimentData data = load_experiment_data(c);
  const QTable q = train_policy(c, data, c.budgets[0]);
  std::ofstream out(f.out);
  if (!out) throw std::runtime_error("cannot write policy file: " + f.out);
  q.save_csv(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing policy file: " + f.out);
  std::cout << f.out << '\n';
  return 0;
}

std::string one_line(std::string s) {
  for (char& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duelkit: winner determination from pairwise comparisons"};
  app.require_subcommand(1);
  Flags f;
  Registered run_r, delta_r, train_r;

  CLI::App* run = app.add_subcommand("run", "run agents over budgets and write CSVs");
  add_common(run, f, run_r);
  run_r.opts.emplace_back("budgets", run->add_option("--budgets", f.budgets, "comma-separated budgets")->delimiter(','));
  run_r.opts.emplace_back("agents", run->add_option("--agents", f.agents, "random,dts,parwis,contextual,rl"));
  run_r.opts.emplace_back("out", run->add_option("--out", f.out, "output directory"));
  run_r.opts.emplace_back("smoothing", run->add_option("--smoothing", f.smoothing, "Rank Centrality smoothing"));
  run_r.opts.emplace_back("rl-episodes", run->add_option("--rl-episodes", f.rl_episodes, "RL training episodes"));
  run_r.opts.emplace_back("workers", run->add_option("--workers", f.workers, "parallel workers"));
  run->add_flag("--quiet", f.quiet, "no progress on stderr");

  CLI::App* delta = app.add_subcommand("delta", "print delta_12 for a dataset");
  add_common(delta, f, delta_r);

  CLI::App* train = app.add_subcommand("train-rl", "train an RL PARWiS policy and save it");
  add_common(train, f, train_r);
  train_r.opts.emplace_back("budget", train->add_option("--budget", f.budget, "duel budget"));
  train_r.opts.emplace_back("out", train->add_option("--out", f.out, "policy CSV path"));
  train_r.opts.emplace_back("smoothing", train->add_option("--smoothing", f.smoothing, "Rank Centrality smoothing"));
  train_r.opts.emplace_back("rl-episodes", train->add_option("--rl-episodes", f.rl_episodes, "training episodes"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (*run) return cmd_run(f, run_r);
    if (*delta) return cmd_delta(f, delta_r);
    if (*train) {
      if (!train_r.given("budget")) throw std::invalid_argument("train-rl needs --budget");
      return cmd_train_rl(f, train_r);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 1;
}
