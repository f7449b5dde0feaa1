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

#include <sstream>
#include <stdexcept>
#include <string>

#include "duelkit/runner.h"
#include "json.hpp"

namespace duelkit {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void apply_config_json(std::string_view json_text, ExperimentConfig& config) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config file: top level must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "dataset") {
        config.dataset = parse_dataset_kind(value.get<std::string>());
      } else if (key == "data_path") {
        config.dataset_path = value.get<std::string>();
      } else if (key == "k") {
        config.k = value.get<std::size_t>();
      } else if (key == "feature_dim") {
        config.feature_dim = value.get<std::size_t>();
      } else if (key == "budgets") {
        config.budgets = value.get<std::vector<std::size_t>>();
      } else if (key == "runs") {
        config.runs = value.get<std::size_t>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "selection_seed") {
        config.selection_seed = value.get<std::uint64_t>();
      } else if (key == "agents") {
        const std::vector<std::string> names =
            value.is_string() ? split_list(value.get<std::string>())
                              : value.get<std::vector<std::string>>();
        config.agents.clear();
        for (const auto& n : names) config.agents.push_back(parse_agent_kind(n));
      } else if (key == "rl_episodes") {
        config.rl.episodes = value.get<std::size_t>();
      } else if (key == "rl_alpha") {
        config.rl.hyper.alpha = value.get<double>();
      } else if (key == "rl_gamma") {
        config.rl.hyper.gamma = value.get<double>();
      } else if (key == "rl_epsilon_start") {
        config.rl.hyper.epsilon_start = value.get<double>();
      } else if (key == "rl_epsilon_end") {
        config.rl.hyper.epsilon_end = value.get<double>();
      } else if (key == "rl_terminal_bonus") {
        config.rl.hyper.terminal_bonus = value.get<double>();
      } else if (key == "logistic_scale") {
        config.logistic_scale = value.get<double>();
      } else if (key == "smoothing") {
        config.smoothing = value.get<double>();
      } else if (key == "out") {
        config.output_dir = value.get<std::string>();
      } else if (key == "workers") {
        config.workers = value.get<std::size_t>();
      } else {
        throw std::invalid_argument("config file: unknown key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config file: bad value for '" + key +
                                  "': " + e.what());
    }
  }
}

}  // namespace duelkit
