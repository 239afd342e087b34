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

#include "doctest.h"
#include "test_util.hpp"
#include "ur/training.hpp"

namespace ur {
namespace {

TrainConfig SmallRun(Algorithm algo, int episodes, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.episodes = episodes;
  cfg.seed = seed;
  cfg.metrics_stride = 10;
  for (auto& l : cfg.learners) l.algorithm = algo;
  return cfg;
}

TEST_SUITE("training") {

TEST_CASE("config validation") {
  TrainConfig cfg;
  cfg.episodes = 0;
  CHECK_THROWS_AS(Train(cfg), std::invalid_argument);
  cfg.episodes = 1;
  cfg.metrics_stride = 0;
  CHECK_THROWS_AS(Train(cfg), std::invalid_argument);
  CHECK(TrainConfig{}.tracked_state.ToString() == "((3, ((a,3),)), (3, ((c,3),)), 1)");
}

TEST_CASE("training is reproducible from the seed") {
  for (Algorithm algo : {Algorithm::kQLearning, Algorithm::kExpectedSarsa, Algorithm::kMonteCarlo}) {
    CAPTURE(ToString(algo));
    const TrainResult a = Train(SmallRun(algo, 200, 42));
    const TrainResult b = Train(SmallRun(algo, 200, 42));
    CHECK(a.tables[0] == b.tables[0]);
    CHECK(a.tables[1] == b.tables[1]);
    CHECK(a.metrics == b.metrics);
    CHECK(a.episode_plies == b.episode_plies);
    const TrainResult c = Train(SmallRun(algo, 200, 43));
    CHECK_FALSE(a.episode_plies == c.episode_plies);
  }
}

TEST_CASE("a single episode is replayable") {
  const TrainResult a = Train(SmallRun(Algorithm::kQLearning, 1, 9));
  const TrainResult b = Train(SmallRun(Algorithm::kQLearning, 1, 9));
  CHECK(a.episodes == 1);
  CHECK(a.tables[0] == b.tables[0]);
  CHECK_FALSE(a.tables[0].empty());
}

TEST_CASE("each table is a function of its own seat's transitions") {
  for (Algorithm algo : {Algorithm::kQLearning, Algorithm::kExpectedSarsa, Algorithm::kMonteCarlo}) {
    CAPTURE(ToString(algo));
    const TrainConfig cfg = SmallRun(algo, 300, 77);
    std::vector<EpisodeLog> episodes(1);
    TrainHooks hooks;
    hooks.on_transition = [&](Seat seat, const Transition& t) {
      if (seat == Seat::kP1) episodes.back().push_back(t);
    };
    hooks.on_episode_end = [&](int, const TrainResult&) { episodes.emplace_back(); };
    const TrainResult result = Train(cfg, hooks);
    episodes.pop_back();
    REQUIRE(episodes.size() == 300u);

    QTable replay;
    for (const EpisodeLog& log : episodes) {
      REQUIRE(!log.empty());
      CHECK(log.back().terminal());
      for (std::size_t i = 0; i + 1 < log.size(); ++i) CHECK_FALSE(log[i].terminal());
      if (algo == Algorithm::kMonteCarlo) {
        MonteCarloUpdate(replay, log, cfg.learners[0]);
      } else {
        for (const Transition& t : log) {
          if (algo == Algorithm::kQLearning) {
            QLearningUpdate(replay, t, cfg.learners[0]);
          } else {
            ExpectedSarsaUpdate(replay, t, cfg.learners[0]);
          }
        }
      }
    }
    CHECK(replay == result.tables[0]);
  }
}

TEST_CASE("metrics") {
  TrainConfig cfg = SmallRun(Algorithm::kQLearning, 95, 5);
  const TrainResult r = Train(cfg);
  CHECK(r.metrics.size() == 10u);  // ceil(95 / 10)
  CHECK(r.metrics.front().episode == 0);
  CHECK(r.metrics.front().tracked_value == 0.0);
  for (std::size_t i = 1; i < r.metrics.size(); ++i) {
    CHECK(r.metrics[i].episode > r.metrics[i - 1].episode);
    CHECK(r.metrics[i].wins_p1 + r.metrics[i].wins_p2 == r.metrics[i].episode + 1);
  }
  for (const MetricsPoint& p : r.metrics) CHECK(p.time_to_finish == r.episode_plies[p.episode]);
  CHECK(r.episode_plies.size() == 95u);

  cfg.metrics_stride = 1;
  cfg.episodes = 7;
  CHECK(Train(cfg).metrics.size() == 7u);
}

TEST_CASE("mixed learners train side by side") {
  TrainConfig cfg = SmallRun(Algorithm::kQLearning, 100, 3);
  cfg.learners[1].algorithm = Algorithm::kMonteCarlo;
  const TrainResult r = Train(cfg);
  CHECK_FALSE(r.tables[0].tracks_visits());
  CHECK(r.tables[1].tracks_visits());
}

TEST_CASE("evaluation") {
  const QTable zero;
  const RulesConfig rules;
  SUBCASE("one game") {
    const EvalResult r = Evaluate(zero, 1, rules, 1);
    CHECK(r.games == 1);
    CHECK(r.agent_wins + r.opponent_wins == 1);
  }
  SUBCASE("tallies add up and repeat with the seed") {
    const EvalResult a = Evaluate(zero, 200, rules, 8);
    const EvalResult b = Evaluate(zero, 200, rules, 8);
    CHECK(a.agent_wins + a.opponent_wins == 200);
    CHECK(a.agent_wins == b.agent_wins);
    CHECK(a.mean_plies == b.mean_plies);
  }
  SUBCASE("an empty table is the smallest-ID-first policy, which beats random") {
    // Greedy over all-zero values always advances the rearmost war-zone piece
    // first; that fixed policy is much stronger than uniform random play.
    const EvalResult r = Evaluate(zero, 2000, rules, 5);
    CHECK(r.win_rate() > 0.8);
  }
  SUBCASE("invalid game count") {
    CHECK_THROWS_AS(Evaluate(zero, 0, rules, 1), std::invalid_argument);
  }
}

TEST_CASE("probe") {
  const RulesConfig rules;
  QTable q;
  SUBCASE("unseen state reads zero and picks the lowest ID") {
    const GameState s = MakeState(rules, {3, 0, {12}}, {3, 0, {9}}, Seat::kP1, 1);
    const ProbeResult p = Probe(q, s);
    CHECK(p.greedy == Action(8));
    REQUIRE(p.readout.size() == 2u);
    for (const auto& [a, v] : p.readout) CHECK(v == 0.0);
  }
  SUBCASE("a single legal action is chosen regardless of values") {
    const GameState s = GameState::Initial(rules).WithDice(2);
    q.set_value(EncodeState(s), Action(kStartPoolP1), -5.0);
    CHECK(Probe(q, s).greedy == Action(kStartPoolP1));
  }
  SUBCASE("values steer the choice") {
    const GameState s = MakeState(rules, {3, 0, {12}}, {3, 0, {9}}, Seat::kP1, 1);
    q.set_value(EncodeState(s), Action(kStartPoolP1), 3.0);
    CHECK(Probe(q, s).greedy == Action(kStartPoolP1));
  }
  SUBCASE("unrolled positions are rejected") {
    CHECK_THROWS_AS(Probe(q, GameState::Initial(rules)), RulesError);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace ur
