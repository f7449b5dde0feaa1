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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "duelkit/runner.h"

namespace duelkit {

namespace {

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string real(const std::optional<double>& v) {
  return v ? real(*v) : std::string();
}

}  // namespace

void write_trajectories_csv(const ResultsTable& results, std::ostream& out) {
  out << "dataset,agent,budget,run,duel,cum_regret,recovered,true_rank,"
         "reported_rank\n";
  for (const ResultCell& cell : results.cells) {
    const std::string_view agent = agent_name(cell.agent);
    for (const RunRecord& rec : cell.runs) {
      const RunTrajectory& t = rec.trajectory;
      for (std::size_t d = 0; d < t.budget; ++d) {
        out << cell.dataset << ',' << agent << ',' << cell.budget << ','
            << rec.run << ',' << (d + 1) << ',' << t.cumulative_regret[d] << ','
            << (t.recommended_item[d] == t.true_winner ? 1 : 0) << ','
            << t.true_rank_of_reported[d] << ',';
        if (t.reported_rank_of_true[d]) out << *t.reported_rank_of_true[d];
        out << '\n';
      }
    }
  }
}

void write_summary_csv(const ResultsTable& results, std::ostream& out) {
  out << "dataset,agent,budget,recovery_fraction,mean_true_rank,"
         "mean_reported_rank,mean_cum_regret,failure_rate,"
         "avg_true_rank_on_failure,delta12_mean,delta12_std\n";
  for (const SummaryRow& r : summarize(results)) {
    out << r.dataset << ',' << agent_name(r.agent) << ',' << r.budget << ','
        << real(r.recovery_fraction) << ',' << real(r.mean_true_rank) << ','
        << real(r.mean_reported_rank) << ',' << real(r.mean_cum_regret) << ','
        << real(r.failure_rate) << ',' << real(r.avg_true_rank_on_failure)
        << ',' << real(r.delta12_mean) << ',' << real(r.delta12_std) << '\n';
  }
}

void write_ttests_csv(const ResultsTable& results, std::ostream& out) {
  out << "dataset,budget,agent_a,agent_b,metric,t_stat,p_value,df\n";
  for (const TTestRow& r : pairwise_ttests(results)) {
    out << r.dataset << ',' << r.budget << ',' << agent_name(r.agent_a) << ','
        << agent_name(r.agent_b) << ',' << r.metric << ','
        << real(r.result.t_stat) << ',' << real(r.result.p_value) << ','
        << real(r.result.df) << '\n';
  }
}

std::vector<std::filesystem::path> emit_results(
    const ResultsTable& results, const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " +
                             output_dir.string() + ": " + ec.message());
  }
  const std::vector<std::filesystem::path> paths{
      output_dir / "trajectories.csv", output_dir / "summary.csv",
      output_dir / "ttests.csv"};
  using Writer = void (*)(const ResultsTable&, std::ostream&);
  const Writer writers[] = {write_trajectories_csv, write_summary_csv,
                            write_ttests_csv};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::ofstream out(paths[i], std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + paths[i].string());
    writers[i](results, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + paths[i].string());
  }
  return paths;
}

}  // namespace duelkit
