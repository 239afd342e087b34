// Copyright 2026 The Ur Workbench Authors
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

// Tabular learners and policies.
//
// All three learners share one table type. The TD learners update online
// from (s, a, r, s') transitions where s' is the same seat's next decision
// point; the opponent's intervening ply is part of the environment. Monte
// Carlo control updates once per episode from that seat's transitions.

#ifndef UR_AGENTS_HPP_
#define UR_AGENTS_HPP_

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ur/action.hpp"
#include "ur/encoding.hpp"
#include "ur/qtable.hpp"
#include "ur/rules.hpp"

namespace ur {

enum class Algorithm { kQLearning, kExpectedSarsa, kMonteCarlo };

std::string_view ToString(Algorithm algo);
// Accepts the CLI spellings q, esarsa, mc as well as the long names.
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct LearnerConfig {
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.1;
  Algorithm algorithm = Algorithm::kQLearning;

  void Validate() const;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

struct Transition {
  StateKey state;
  Action action;
  double reward = 0.0;
  // Absent when the episode ended before this seat decided again.
  std::optional<StateKey> next_state;
  ActionSet next_legal;

  bool terminal() const { return !next_state.has_value(); }
};

using EpisodeLog = std::vector<Transition>;

class PolicyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argmax over `legal`, ties to the smallest action ID.
Action GreedyAction(const QTable& q, StateKey s, ActionSet legal);

// With probability eps a uniform draw over all of `legal` (greedy included),
// otherwise GreedyAction.
Action EpsilonGreedy(const QTable& q, StateKey s, ActionSet legal, double eps, Rng& rng);

Action RandomPolicy(ActionSet legal, Rng& rng);

// max_a Q(s, a) over stored entries of s; 0 when s has none.
double StateValue(const QTable& q, StateKey s);

// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).
void QLearningUpdate(QTable& q, const Transition& t, const LearnerConfig& cfg);

// Bootstraps on the epsilon-greedy expectation
// (1 - eps) * max Q(s',.) + eps / |A(s')| * sum Q(s',.).
void ExpectedSarsaUpdate(QTable& q, const Transition& t, const LearnerConfig& cfg);

// First-visit Monte Carlo with incremental sample averages. The episode must
// end in a terminal transition.
void MonteCarloUpdate(QTable& q, const EpisodeLog& episode, const LearnerConfig& cfg);

// Greedy player backed by a table trained for `trained_seat`. When asked to
// act for the other seat it consults the table on the mirrored position.
class TablePolicy {
 public:
  TablePolicy(const QTable& table, Seat trained_seat) : table_(&table), trained_seat_(trained_seat) {}

  Action Choose(const GameState& state) const;

 private:
  const QTable* table_;
  Seat trained_seat_;
};

}  // namespace ur

#endif  // UR_AGENTS_HPP_
