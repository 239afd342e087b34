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

#ifndef UR_TRAINING_HPP_
#define UR_TRAINING_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ur/agents.hpp"
#include "ur/encoding.hpp"
#include "ur/env.hpp"
#include "ur/qtable.hpp"
#include "ur/rules.hpp"

namespace ur {

// The frequently visited position whose value is tracked during training.
inline constexpr const char* kDefaultTrackedState = "((3, ((a,3),)), (3, ((c,3),)), 1)";

struct TrainConfig {
  int episodes = 100000;
  RulesConfig rules;
  std::array<LearnerConfig, 2> learners;
  std::uint64_t seed = 0;
  StateKey tracked_state = StateKey::Parse(kDefaultTrackedState);
  int metrics_stride = 100;

  void Validate() const;
};

// One recorded point. tracked_value is read from seat 1's table after
// `episode` completed episodes; time_to_finish is the ply count of episode
// `episode`; the win counters include that episode.
struct MetricsPoint {
  int episode = 0;
  int time_to_finish = 0;
  double tracked_value = 0.0;
  int wins_p1 = 0;
  int wins_p2 = 0;

  friend bool operator==(const MetricsPoint&, const MetricsPoint&) = default;
};

using MetricsSeries = std::vector<MetricsPoint>;

struct TrainResult {
  std::array<QTable, 2> tables;
  MetricsSeries metrics;
  int episodes = 0;
  // Plies of every episode, in order.
  std::vector<int> episode_plies;
};

// Observation points for tests and tooling. Either may be empty.
struct TrainHooks {
  // Every transition a seat's learner receives, in delivery order.
  std::function<void(Seat, const Transition&)> on_transition;
  std::function<void(int episode, const TrainResult&)> on_episode_end;
};

// Self-play between two independent learners. Throws InvariantBreach when
// an episode exceeds the ply cap or a value leaves its analytic bounds.
TrainResult Train(const TrainConfig& cfg, const TrainHooks& hooks = {});

// Bounds every Q value must respect under the default rewards and gamma 0.9.
inline constexpr double kMinQ = -10.0;
inline constexpr double kMaxQ = 1300.0;

struct EvalResult {
  int games = 0;
  int agent_wins = 0;
  int opponent_wins = 0;
  double mean_plies = 0.0;

  double win_rate() const { return games == 0 ? 0.0 : static_cast<double>(agent_wins) / games; }
};

// Greedy table player against the uniform-random policy. The agent takes P1
// in even-numbered games and P2 in odd ones.
EvalResult Evaluate(const QTable& q, int games, const RulesConfig& rules, std::uint64_t seed,
                    Seat trained_seat = Seat::kP1);

struct ProbeResult {
  Action greedy;
  std::vector<std::pair<Action, double>> readout;
};

// Greedy choice and the values of every legal action at `state`.
ProbeResult Probe(const QTable& q, const GameState& state);

}  // namespace ur

#endif  // UR_TRAINING_HPP_
