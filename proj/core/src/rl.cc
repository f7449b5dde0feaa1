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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "duelkit/errors.h"

namespace duelkit {

RlState RlState::from_index(std::size_t index) {
  if (index >= kCount) throw std::out_of_range("RlState::from_index");
  RlState s;
  s.top_changed = (index % 2) == 1;
  index /= 2;
  s.gap_bucket = static_cast<std::uint8_t>(index % kGapBuckets);
  s.t_bucket = static_cast<std::uint8_t>(index / kGapBuckets);
  return s;
}

std::uint8_t time_bucket(std::size_t t, std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("time_bucket: budget is 0");
  const std::size_t spent = t == 0 ? 0 : t - 1;
  return static_cast<std::uint8_t>(
      std::min<std::size_t>(3, (4 * spent) / budget));
}

std::uint8_t gap_bucket(double gap) {
  if (gap < 0.005) return 0;
  if (gap < 0.02) return 1;
  if (gap < 0.05) return 2;
  if (gap < 0.1) return 3;
  return 4;
}

RlState make_rl_state(std::size_t t, std::size_t budget,
                      const std::vector<double>& pi, bool top_changed) {
  const std::vector<Item> order = ranking_from_scores(pi);
  RlState s;
  s.t_bucket = time_bucket(t, budget);
  s.gap_bucket = gap_bucket(pi[order[0]] - pi[order[1]]);
  s.top_changed = top_changed;
  return s;
}

QTable::QTable(std::size_t k)
    : k_(k),
      q_(RlState::kCount * (k >= 2 ? k - 1 : 0), 0.0),
      visits_(q_.size(), 0) {
  if (k < 2) throw std::invalid_argument("QTable: k must be >= 2");
}

std::size_t QTable::slot(const RlState& s, RlAction a) const {
  if (a.challenger_rank < 2 || a.challenger_rank > k_ ||
      s.t_bucket >= RlState::kTimeBuckets ||
      s.gap_bucket >= RlState::kGapBuckets) {
    throw std::out_of_range("QTable: state or action out of range");
  }
  return s.index() * action_count() + (a.challenger_rank - 2);
}

double QTable::value(const RlState& s, RlAction a) const {
  return q_[slot(s, a)];
}

void QTable::set_value(const RlState& s, RlAction a, double v) {
  q_[slot(s, a)] = v;
}

std::uint64_t QTable::visits(const RlState& s, RlAction a) const {
  return visits_[slot(s, a)];
}

void QTable::add_visit(const RlState& s, RlAction a) { ++visits_[slot(s, a)]; }

double QTable::max_value(const RlState& s) const {
  const std::size_t base = s.index() * action_count();
  return *std::max_element(q_.begin() + base,
                           q_.begin() + base + action_count());
}

RlAction QTable::greedy_action(const RlState& s) const {
  const std::size_t base = s.index() * action_count();
  std::size_t best = 0;
  for (std::size_t a = 1; a < action_count(); ++a) {
    if (q_[base + a] > q_[base + best]) best = a;
  }
  return {best + 2};
}

double QTable::max_abs_value() const {
  double m = 0.0;
  for (double v : q_) m = std::max(m, std::abs(v));
  return m;
}

void QTable::save_csv(std::ostream& out) const {
  out << "t_bucket,gap_bucket,top_changed,challenger_rank,q\n";
  char buf[64];
  for (std::size_t si = 0; si < RlState::kCount; ++si) {
    const RlState s = RlState::from_index(si);
    for (std::size_t rank = 2; rank <= k_; ++rank) {
      std::snprintf(buf, sizeof(buf), "%.17g", value(s, {rank}));
      out << int(s.t_bucket) << ',' << int(s.gap_bucket) << ','
          << (s.top_changed ? 1 : 0) << ',' << rank << ',' << buf << '\n';
    }
  }
}

QTable QTable::load_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) ||
      line != "t_bucket,gap_bucket,top_changed,challenger_rank,q") {
    throw ParseError("QTable: missing or wrong header", line_no);
  }
  struct Row {
    RlState s;
    std::size_t rank;
    double q;
  };
  std::vector<Row> rows;
  std::size_t max_rank = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f[5];
    for (int c = 0; c < 5; ++c) {
      if (!std::getline(fields, f[c], ',')) {
        throw ParseError("QTable: expected 5 fields", line_no);
      }
    }
    try {
      Row r;
      r.s.t_bucket = static_cast<std::uint8_t>(std::stoul(f[0]));
      r.s.gap_bucket = static_cast<std::uint8_t>(std::stoul(f[1]));
      r.s.top_changed = std::stoul(f[2]) != 0;
      r.rank = std::stoul(f[3]);
      r.q = std::stod(f[4]);
      if (r.s.t_bucket >= RlState::kTimeBuckets ||
          r.s.gap_bucket >= RlState::kGapBuckets || r.rank < 2 ||
          !std::isfinite(r.q)) {
        throw std::out_of_range("field");
      }
      max_rank = std::max(max_rank, r.rank);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError("QTable: bad field value", line_no);
    }
  }
  if (max_rank < 2) throw ParseError("QTable: no rows", line_no);
  QTable table(max_rank);
  for (const Row& r : rows) table.set_value(r.s, {r.rank}, r.q);
  return table;
}

void q_update(QTable& q, const RlState& s, RlAction a, double r,
              const std::optional<RlState>& next, double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("q_update: need alpha in (0,1], gamma in [0,1]");
  }
  const double bootstrap = next ? q.max_value(*next) : 0.0;
  const double old = q.value(s, a);
  q.set_value(s, a, old + alpha * (r + gamma * bootstrap - old));
  q.add_visit(s, a);
}

double reward(const DuelObservation& obs, Item true_winner, bool terminal,
              Item recommended, const RewardOptions& options) {
  double r = obs.winner == true_winner ? 0.0 : -1.0;
  if (terminal && recommended == true_winner) r += options.terminal_bonus;
  return r;
}

RlAction rl_select_action(const QTable& q, const RlState& s, bool greedy,
                          double epsilon, Rng& rng) {
  if (!greedy && rng.uniform() < epsilon) {
    return {2 + rng.uniform_index(q.action_count())};
  }
  return q.greedy_action(s);
}

Pair rl_select_pair(const QTable& q, const RlState& s,
                    const std::vector<Item>& ranking, bool greedy,
                    double epsilon, Rng& rng) {
  if (ranking.size() != q.k()) {
    throw std::invalid_argument("rl_select_pair: ranking size != k");
  }
  const RlAction a = rl_select_action(q, s, greedy, epsilon, rng);
  return {ranking[0], ranking[a.challenger_rank - 1]};
}

RlParwisAgent::RlParwisAgent(std::size_t k, std::size_t budget,
                             std::shared_ptr<const QTable> policy, Rng rng,
                             double smoothing, double epsilon)
    : ParwisFamilyAgent(k, std::move(rng), smoothing),
      budget_(budget),
      policy_(std::move(policy)),
      epsilon_(epsilon) {
  if (!policy_ || policy_->k() != k) {
    throw std::invalid_argument("RlParwisAgent: policy must match k");
  }
}

RlState RlParwisAgent::state_at(std::size_t t) const {
  return make_rl_state(t, budget_, scores().pi, top_changed());
}

Pair RlParwisAgent::select_after_init(std::size_t t) {
  const RlState s = state_at(t);
  const bool greedy = epsilon_ <= 0.0;
  const RlAction a = rl_select_action(*policy_, s, greedy, epsilon_, rng());
  last_action_ = a;
  const std::vector<Item> ranking = ranking_from_scores(scores().pi);
  return {ranking[0], ranking[a.challenger_rank - 1]};
}

double epsilon_for_episode(const RlHyper& hyper, std::size_t episode,
                           std::size_t episodes) {
  if (episodes <= 1) return hyper.epsilon_end;
  const double frac =
      static_cast<double>(episode) / static_cast<double>(episodes - 1);
  return std::lerp(hyper.epsilon_start, hyper.epsilon_end, frac);
}

QTable train_rl(const EnvSampler& sampler, std::size_t episodes,
                std::size_t budget, const RlHyper& hyper, std::uint64_t seed) {
  if (episodes == 0) throw std::invalid_argument("train_rl: episodes must be >= 1");
  auto first = sampler(0);
  const std::size_t k = first->k();
  if (budget + 1 < k) {
    throw std::invalid_argument("train_rl: budget must be >= k - 1");
  }
  auto table = std::make_shared<QTable>(k);
  const RewardOptions reward_opts{hyper.terminal_bonus};

  for (std::size_t e = 0; e < episodes; ++e) {
    auto env = e == 0 ? first : sampler(e);
    if (env->k() != k) throw std::invalid_argument("train_rl: k changed");
    const Rng episode_rng(mix_seed(seed, e));
    Rng duel_rng = episode_rng.split(2);
    RlParwisAgent agent(k, budget, table, episode_rng.split(1),
                        hyper.smoothing,
                        epsilon_for_episode(hyper, e, episodes));
    const Item truth = env->true_winner();

    for (std::size_t t = 1; t <= budget; ++t) {
      const bool learning = !agent.in_initialization();
      const RlState s = learning ? agent.state_at(t) : RlState{};
      const Pair pair = agent.select_pair(t);
      const Item winner = duel(*env, pair.first, pair.second, duel_rng);
      const DuelObservation obs{pair.first, pair.second, winner, t};
      agent.observe(obs);
      if (!learning) continue;
      const bool terminal = t == budget;
      const double r = reward(obs, truth, terminal,
                              terminal ? agent.recommend() : 0, reward_opts);
      std::optional<RlState> next;
      if (!terminal) next = agent.state_at(t + 1);
      q_update(*table, s, *agent.last_action(), r, next, hyper.alpha,
               hyper.gamma);
    }
  }
  return *table;
}

}  // namespace duelkit
