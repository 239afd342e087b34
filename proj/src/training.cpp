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

#include "ur/training.hpp"

#include <sstream>
#include <stdexcept>

namespace ur {
namespace {

// Independent streams derived from one user seed.
Rng StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kExploreStream = 2;
constexpr std::uint64_t kOpponentStream = 3;

struct PendingDecision {
  StateKey state;
  Action action;
};

class SelfPlay {
 public:
  SelfPlay(const TrainConfig& cfg, const TrainHooks& hooks)
      : cfg_(cfg), hooks_(hooks), env_(cfg.rules) {
    for (Seat s : {Seat::kP1, Seat::kP2}) {
      result_.tables[SeatIndex(s)].set_tracks_visits(Learner(s).algorithm == Algorithm::kMonteCarlo);
    }
  }

  TrainResult Run() {
    Rng episode_seeds = StreamRng(cfg_.seed, kEpisodeStream);
    explore_ = StreamRng(cfg_.seed, kExploreStream);
    result_.episode_plies.reserve(static_cast<std::size_t>(cfg_.episodes));
    std::array<int, 2> wins{};

    for (int ep = 0; ep < cfg_.episodes; ++ep) {
      const bool record = ep % cfg_.metrics_stride == 0;
      MetricsPoint point;
      if (record) {
        point.episode = ep;
        point.tracked_value = StateValue(result_.tables[0], cfg_.tracked_state);
      }

      const Seat winner = PlayEpisode(episode_seeds());
      ++wins[SeatIndex(winner)];
      result_.episode_plies.push_back(env_.plies());
      result_.episodes = ep + 1;

      if (record) {
        point.time_to_finish = env_.plies();
        point.wins_p1 = wins[0];
        point.wins_p2 = wins[1];
        result_.metrics.push_back(point);
      }
      if (hooks_.on_episode_end) hooks_.on_episode_end(ep, result_);
    }
    return std::move(result_);
  }

 private:
  const LearnerConfig& Learner(Seat s) const { return cfg_.learners[SeatIndex(s)]; }

  Seat PlayEpisode(std::uint64_t episode_seed) {
    std::array<std::optional<PendingDecision>, 2> pending;
    for (auto& log : logs_) log.clear();

    StepResult step = env_.Reset(episode_seed);
    while (!step.done) {
      const Observation& obs = step.observation;
      const Seat seat = obs.to_move;
      const StateKey key = *obs.key;
      auto& open = pending[SeatIndex(seat)];
      if (open) {
        Deliver(seat, Transition{open->state, open->action, env_.PendingReward(seat), key, obs.legal});
      }
      const Action action =
          EpsilonGreedy(result_.tables[SeatIndex(seat)], key, obs.legal, Learner(seat).epsilon, explore_);
      open = PendingDecision{key, action};
      step = env_.Step(action);
    }

    for (Seat seat : {Seat::kP1, Seat::kP2}) {
      auto& open = pending[SeatIndex(seat)];
      if (open) {
        Deliver(seat, Transition{open->state, open->action, env_.PendingReward(seat), std::nullopt, {}});
      }
      if (Learner(seat).algorithm == Algorithm::kMonteCarlo) {
        QTable& table = result_.tables[SeatIndex(seat)];
        const EpisodeLog& log = logs_[SeatIndex(seat)];
        MonteCarloUpdate(table, log, Learner(seat));
        for (const Transition& t : log) CheckBounds(table, t);
      }
    }
    return *Winner(env_.state());
  }

  void Deliver(Seat seat, const Transition& t) {
    if (hooks_.on_transition) hooks_.on_transition(seat, t);
    QTable& table = result_.tables[SeatIndex(seat)];
    switch (Learner(seat).algorithm) {
      case Algorithm::kQLearning:
        QLearningUpdate(table, t, Learner(seat));
        CheckBounds(table, t);
        break;
      case Algorithm::kExpectedSarsa:
        ExpectedSarsaUpdate(table, t, Learner(seat));
        CheckBounds(table, t);
        break;
      case Algorithm::kMonteCarlo:
        logs_[SeatIndex(seat)].push_back(t);
        break;
    }
  }

  // The bounds are derived for gamma <= 0.9; larger discounts are not checked.
  void CheckBounds(const QTable& table, const Transition& t) const {
    if (cfg_.learners[0].gamma > 0.9 || cfg_.learners[1].gamma > 0.9) return;
    const double v = table.value(t.state, t.action);
    if (v < kMinQ || v > kMaxQ) {
      std::ostringstream os;
      os << "Q value " << v << " out of bounds at " << t.state.ToString() << " action "
         << t.action.id();
      throw InvariantBreach(os.str());
    }
  }

  const TrainConfig& cfg_;
  const TrainHooks& hooks_;
  Environment env_;
  Rng explore_;
  TrainResult result_;
  std::array<EpisodeLog, 2> logs_;
};

}  // namespace

void TrainConfig::Validate() const {
  if (episodes < 1) throw std::invalid_argument("episodes must be at least 1");
  if (metrics_stride < 1) throw std::invalid_argument("metrics stride must be at least 1");
  rules.Validate();
  for (const LearnerConfig& l : learners) l.Validate();
}

TrainResult Train(const TrainConfig& cfg, const TrainHooks& hooks) {
  cfg.Validate();
  return SelfPlay(cfg, hooks).Run();
}

EvalResult Evaluate(const QTable& q, int games, const RulesConfig& rules, std::uint64_t seed,
                    Seat trained_seat) {
  if (games < 1) throw std::invalid_argument("games must be at least 1");
  Environment env(rules);
  Rng game_seeds = StreamRng(seed, kEpisodeStream);
  Rng opponent = StreamRng(seed, kOpponentStream);
  const TablePolicy agent(q, trained_seat);

  EvalResult result;
  long total_plies = 0;
  for (int g = 0; g < games; ++g) {
    const Seat agent_seat = g % 2 == 0 ? Seat::kP1 : Seat::kP2;
    StepResult step = env.Reset(game_seeds());
    while (!step.done) {
      const Action a = step.observation.to_move == agent_seat
                           ? agent.Choose(env.state())
                           : RandomPolicy(step.observation.legal, opponent);
      step = env.Step(a);
    }
    ++result.games;
    total_plies += env.plies();
    if (*Winner(env.state()) == agent_seat) {
      ++result.agent_wins;
    } else {
      ++result.opponent_wins;
    }
  }
  result.mean_plies = static_cast<double>(total_plies) / result.games;
  return result;
}

ProbeResult Probe(const QTable& q, const GameState& state) {
  const StateKey key = EncodeState(state);
  const ActionSet legal = LegalActions(state);
  if (legal.empty()) throw RulesError("probe position has no legal actions");
  ProbeResult out;
  out.greedy = GreedyAction(q, key, legal);
  for (Action a : legal) out.readout.emplace_back(a, q.value(key, a));
  return out;
}

}  // namespace ur
