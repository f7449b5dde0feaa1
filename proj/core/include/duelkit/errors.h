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

#ifndef DUELKIT_ERRORS_H_
#define DUELKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace duelkit {

// Bad caller input (out-of-range item, non-positive score, ...) is reported
// with std::invalid_argument. The types below cover the remaining failures.

// Rank Centrality was asked for a stationary distribution of a chain that
// has more than one closed class.
class NonErgodicChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An agent was asked for a recommendation before it has one.
class NotReadyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A duel was requested after the run's budget was spent.
class BudgetExhaustedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file. The message carries the offending line or row.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace duelkit

#endif  // DUELKIT_ERRORS_H_
