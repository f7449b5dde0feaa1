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

#ifndef DUELKIT_RNG_H_
#define DUELKIT_RNG_H_

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace duelkit {

// SplitMix64 finalizer over the pair (a, b). Used for positional seed
// derivation, so the result must never depend on call order.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t hash_string(std::string_view s);

// Seedable, splittable random stream. All randomness in the toolkit flows
// through one of these; each run owns its own instance.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent child stream; a pure function of (seed(), tag).
  Rng split(std::uint64_t tag) const;

  // One raw 64-bit draw.
  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) from exactly one raw draw (53-bit mantissa).
  double uniform();

  // Uniform integer on [0, n). Requires n >= 1.
  std::size_t uniform_index(std::size_t n);

  double normal();
  double gamma(double shape);
  double beta(double a, double b);

  // UniformRandomBitGenerator, for std::shuffle and friends.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace duelkit

#endif  // DUELKIT_RNG_H_
