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

#ifndef DUELKIT_DATASETS_H_
#define DUELKIT_DATASETS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "duelkit/env.h"

namespace duelkit {

enum class DatasetKind { kSynthetic, kJester, kMovieLens };

std::string_view dataset_name(DatasetKind kind);
// Throws std::invalid_argument listing the valid names.
DatasetKind parse_dataset_kind(std::string_view name);

// Per-item mean rating. Parallel arrays, sorted by item id unless a
// selection reordered them.
struct RatingsTable {
  std::vector<std::int64_t> items;
  std::vector<double> avg_rating;
  std::vector<std::size_t> n_ratings;
  // Non-fatal load diagnostics (e.g. items dropped for having no ratings).
  std::vector<std::string> warnings;

  std::size_t size() const { return items.size(); }
  std::size_t total_ratings() const;
};

// Jester CSV without header: n_rated, r_1, ..., r_100. The literal 99 marks
// a missing rating; anything else must lie in [-10, 10]. Items with no
// ratings are dropped with a warning. Throws ParseError with the row number.
RatingsTable load_jester(std::istream& in);
RatingsTable load_jester(const std::filesystem::path& path);

// MovieLens ratings.csv with header userId,movieId,rating,timestamp.
// Ratings must be one of 0.5, 1.0, ..., 5.0.
RatingsTable load_movielens(std::istream& in);
RatingsTable load_movielens(const std::filesystem::path& path);

// Jester: uniform sample of k items under seed (returned in id order).
// MovieLens: the k most-rated items, ties to the smaller id. Throws
// std::invalid_argument when the table has fewer than k items.
RatingsTable select_items(const RatingsTable& table, DatasetKind kind,
                          std::size_t k, std::uint64_t seed);

// p(i, j) = 1 / (1 + exp(-scale (avg_i - avg_j))).
PreferenceMatrix ratings_to_preferences(const RatingsTable& table,
                                        double scale = 1.0);

PreferenceEnvironment make_ratings_environment(const RatingsTable& table,
                                               double scale,
                                               std::string label);

}  // namespace duelkit

#endif  // DUELKIT_DATASETS_H_
