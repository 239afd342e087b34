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

#include "ur/env.hpp"

#include <string>

namespace ur {

double RewardFor(const MoveEvents& events, const RewardSpec& spec) {
  double r = spec.fallback;
  if (events.captured_opponent) r += spec.capture;
  if (events.landed_war_rosette) {
    r += spec.war_rosette_landing;
  } else if (events.landed_war_nonrosette) {
    r += spec.war_plain_landing;
  }
  if (events.game_won) r += spec.win;
  return r;
}

Environment::Environment(const RulesConfig& config, const RewardSpec& rewards)
    : config_(config), rewards_(rewards), state_(GameState::Initial(config)) {}

StepResult Environment::Reset(std::uint64_t seed) {
  rng_.seed(seed);
  state_ = GameState::Initial(config_);
  pending_ = {};
  done_ = false;
  plies_ = 0;
  RollAndObserve();
  StepResult result;
  result.observation = observation_;
  return result;
}

StepResult Environment::Step(Action action) {
  if (done_) throw IllegalMoveError(IllegalReason::kGameOver, "reset the environment first");
  if (!observation_.legal.contains(action)) {
    // Let the rules engine produce the specific reason.
    ApplyMove(state_, action);
    throw IllegalMoveError(IllegalReason::kNotMoversPiece,
                           "action " + std::to_string(action.id()) + " is not legal here");
  }

  const Seat mover = state_.to_move();
  auto [next, events] = ApplyMove(state_, action);
  state_ = next;
  ++plies_;

  StepResult result;
  result.info = events;
  const double r = RewardFor(events, rewards_);
  result.reward[SeatIndex(mover)] = r;
  pending_[SeatIndex(mover)] = r;

  if (events.game_won) {
    // The loser is credited rewards_.lose at the end of the episode.
    const Seat loser = Opponent(mover);
    result.reward[SeatIndex(loser)] += rewards_.lose;
    pending_[SeatIndex(loser)] += rewards_.lose;
    done_ = true;
    observation_ = Observation{std::nullopt, ActionSet{}, state_.to_move()};
    result.done = true;
    result.observation = observation_;
    return result;
  }
  if (plies_ >= kMaxPlies) {
    throw InvariantBreach("episode exceeded " + std::to_string(kMaxPlies) + " plies");
  }

  // The opponent's pending reward is carried until its own decision point.
  RollAndObserve();
  result.observation = observation_;
  return result;
}

void Environment::RollAndObserve() {
  state_ = state_.WithDice(RollDice(rng_, config_));
  observation_ = Observation{EncodeState(state_), LegalActions(state_), state_.to_move()};
}

}  // namespace ur
