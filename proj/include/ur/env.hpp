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

#ifndef UR_ENV_HPP_
#define UR_ENV_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ur/encoding.hpp"
#include "ur/rules.hpp"

namespace ur {

struct RewardSpec {
  double capture = 10.0;
  double war_rosette_landing = 20.0;
  double war_plain_landing = -1.0;
  double win = 100.0;
  double lose = 0.0;
  double fallback = 0.0;
};

// Additive over the events of one move; a rosette landing never also takes
// the war-zone penalty.
double RewardFor(const MoveEvents& events, const RewardSpec& spec = {});

struct Observation {
  // Empty once the episode is over.
  std::optional<StateKey> key;
  ActionSet legal;
  Seat to_move = Seat::kP1;
};

struct StepResult {
  Observation observation;
  // Reward credited to each seat by this step.
  std::array<double, 2> reward{};
  bool done = false;
  MoveEvents info;
};

// Raised when an episode runs past the ply cap; indicates a rules bug.
class InvariantBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two-seat episodic environment. One instance is driven by one caller.
class Environment {
 public:
  static constexpr int kMaxPlies = 100000;

  explicit Environment(const RulesConfig& config, const RewardSpec& rewards = {});

  // New game with P1 to move and its dice rolled.
  StepResult Reset(std::uint64_t seed);

  // Applies the mover's action and rolls for the next decision point.
  // Illegal actions throw IllegalMoveError and leave the episode untouched.
  StepResult Step(Action action);

  const GameState& state() const { return state_; }
  const RulesConfig& config() const { return config_; }
  const Observation& observation() const { return observation_; }
  bool done() const { return done_; }
  int plies() const { return plies_; }

  // Reward credited to `seat` since that seat's previous decision point.
  double PendingReward(Seat seat) const { return pending_[SeatIndex(seat)]; }

 private:
  void RollAndObserve();

  RulesConfig config_;
  RewardSpec rewards_;
  Rng rng_;
  GameState state_;
  Observation observation_;
  std::array<double, 2> pending_{};
  bool done_ = true;
  int plies_ = 0;
};

}  // namespace ur

#endif  // UR_ENV_HPP_
