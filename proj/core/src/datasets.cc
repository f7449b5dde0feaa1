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

#include "duelkit/datasets.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "duelkit/errors.h"
#include "duelkit/rng.h"

namespace duelkit {

namespace {

constexpr std::size_t kJesterJokes = 100;
constexpr double kJesterMissing = 99.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '"')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

void split_csv(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path.string());
  }
  return in;
}

struct Accumulator {
  double sum = 0.0;
  std::size_t n = 0;
};

}  // namespace

std::string_view dataset_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kSynthetic:
      return "synthetic";
    case DatasetKind::kJester:
      return "jester";
    case DatasetKind::kMovieLens:
      return "movielens";
  }
  return "unknown";
}

DatasetKind parse_dataset_kind(std::string_view name) {
  if (name == "synthetic") return DatasetKind::kSynthetic;
  if (name == "jester") return DatasetKind::kJester;
  if (name == "movielens") return DatasetKind::kMovieLens;
  throw std::invalid_argument("unknown dataset '" + std::string(name) +
                              "' (valid: synthetic, jester, movielens)");
}

std::size_t RatingsTable::total_ratings() const {
  return std::accumulate(n_ratings.begin(), n_ratings.end(), std::size_t{0});
}

RatingsTable load_jester(std::istream& in) {
  std::vector<Accumulator> acc(kJesterJokes);
  std::vector<std::string_view> fields;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    split_csv(line, fields);
    if (fields.size() != kJesterJokes + 1) {
      throw ParseError("jester: expected 101 columns, got " +
                           std::to_string(fields.size()),
                       row);
    }
    double n_rated = 0.0;
    if (!parse_number(fields[0], n_rated)) {
      throw ParseError("jester: non-numeric rating count", row);
    }
    for (std::size_t c = 0; c < kJesterJokes; ++c) {
      double r = 0.0;
      if (!parse_number(fields[c + 1], r)) {
        throw ParseError("jester: non-numeric rating in column " +
                             std::to_string(c + 2),
                         row);
      }
      if (r == kJesterMissing) continue;
      if (r < -10.0 || r > 10.0) {
        throw ParseError("jester: rating outside [-10, 10] in column " +
                             std::to_string(c + 2),
                         row);
      }
      acc[c].sum += r;
      ++acc[c].n;
    }
  }
  RatingsTable table;
  for (std::size_t c = 0; c < kJesterJokes; ++c) {
    const auto id = static_cast<std::int64_t>(c + 1);
    if (acc[c].n == 0) {
      table.warnings.push_back("jester: joke " + std::to_string(id) +
                               " has no ratings; dropped");
      continue;
    }
    table.items.push_back(id);
    table.avg_rating.push_back(acc[c].sum / static_cast<double>(acc[c].n));
    table.n_ratings.push_back(acc[c].n);
  }
  return table;
}

RatingsTable load_jester(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return load_jester(in);
}

RatingsTable load_movielens(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("movielens: missing header", 1);
  }
  std::string_view header = line;
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  if (trim(header) != "userId,movieId,rating,timestamp") {
    throw ParseError(
        "movielens: expected header userId,movieId,rating,timestamp", 1);
  }
  std::unordered_map<std::int64_t, Accumulator> acc;
  std::vector<std::string_view> fields;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    split_csv(line, fields);
    if (fields.size() != 4) {
      throw ParseError("movielens: expected 4 columns", line_no);
    }
    std::int64_t movie = 0;
    if (!parse_number(fields[1], movie)) {
      throw ParseError("movielens: non-numeric movieId", line_no);
    }
    double rating = 0.0;
    if (!parse_number(fields[2], rating)) {
      throw ParseError("movielens: non-numeric rating", line_no);
    }
    const double halves = rating * 2.0;
    if (!(halves >= 1.0 && halves <= 10.0) || halves != std::round(halves)) {
      throw ParseError("movielens: rating must be a multiple of 0.5 in "
                       "[0.5, 5]",
                       line_no);
    }
    Accumulator& a = acc[movie];
    a.sum += rating;
    ++a.n;
  }
  std::map<std::int64_t, Accumulator> sorted(acc.begin(), acc.end());
  RatingsTable table;
  for (const auto& [id, a] : sorted) {
    table.items.push_back(id);
    table.avg_rating.push_back(a.sum / static_cast<double>(a.n));
    table.n_ratings.push_back(a.n);
  }
  return table;
}

RatingsTable load_movielens(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  return load_movielens(in);
}

RatingsTable select_items(const RatingsTable& table, DatasetKind kind,
                          std::size_t k, std::uint64_t seed) {
  if (table.size() < k) {
    throw std::invalid_argument("select_items: table has " +
                                std::to_string(table.size()) +
                                " items, need " + std::to_string(k));
  }
  std::vector<std::size_t> idx(table.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  switch (kind) {
    case DatasetKind::kJester: {
      Rng rng(seed);
      // Partial Fisher-Yates for the first k slots.
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
      }
      idx.resize(k);
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return table.items[a] < table.items[b];
      });
      break;
    }
    case DatasetKind::kMovieLens:
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (table.n_ratings[a] != table.n_ratings[b]) {
          return table.n_ratings[a] > table.n_ratings[b];
        }
        return table.items[a] < table.items[b];
      });
      idx.resize(k);
      break;
    case DatasetKind::kSynthetic:
      throw std::invalid_argument("select_items: synthetic has no ratings");
  }
  RatingsTable out;
  out.warnings = table.warnings;
  for (std::size_t i : idx) {
    out.items.push_back(table.items[i]);
    out.avg_rating.push_back(table.avg_rating[i]);
    out.n_ratings.push_back(table.n_ratings[i]);
  }
  return out;
}

PreferenceMatrix ratings_to_preferences(const RatingsTable& table,
                                        double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("ratings_to_preferences: scale must be > 0");
  }
  const std::size_t k = table.size();
  if (k < 2) throw std::invalid_argument("ratings_to_preferences: need k >= 2");
  Grid<double> p(k, k, 0.5);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = scale * (table.avg_rating[i] - table.avg_rating[j]);
      // Evaluate the side >= 0.5 so the complement is exact.
      if (d >= 0.0) {
        p(i, j) = 1.0 / (1.0 + std::exp(-d));
        p(j, i) = 1.0 - p(i, j);
      } else {
        p(j, i) = 1.0 / (1.0 + std::exp(d));
        p(i, j) = 1.0 - p(j, i);
      }
    }
  }
  return PreferenceMatrix(std::move(p));
}

PreferenceEnvironment make_ratings_environment(const RatingsTable& table,
                                               double scale,
                                               std::string label) {
  return PreferenceEnvironment(ratings_to_preferences(table, scale),
                               std::nullopt, std::move(label));
}

}  // namespace duelkit
