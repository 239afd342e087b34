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

#include "ur/agents.hpp"

#include <string>

#include "absl/container/flat_hash_set.h"

namespace ur {
namespace {

double MaxValue(const QTable& q, StateKey s, ActionSet legal) {
  double best = 0.0;
  bool first = true;
  for (Action a : legal) {
    const double v = q.value(s, a);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  return best;
}

void CheckNonEmpty(ActionSet legal) {
  if (legal.empty()) throw PolicyError("no legal actions to choose from");
}

}  // namespace

std::string_view ToString(Algorithm algo) {
  switch (algo) {
    case Algorithm::kQLearning:
      return "q_learning";
    case Algorithm::kExpectedSarsa:
      return "expected_sarsa";
    case Algorithm::kMonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "q" || name == "q_learning") return Algorithm::kQLearning;
  if (name == "esarsa" || name == "expected_sarsa") return Algorithm::kExpectedSarsa;
  if (name == "mc" || name == "monte_carlo") return Algorithm::kMonteCarlo;
  return std::nullopt;
}

void LearnerConfig::Validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in [0, 1]");
}

Action GreedyAction(const QTable& q, StateKey s, ActionSet legal) {
  CheckNonEmpty(legal);
  Action best = legal.front();
  double best_value = q.value(s, best);
  for (Action a : legal) {
    const double v = q.value(s, a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

Action EpsilonGreedy(const QTable& q, StateKey s, ActionSet legal, double eps, Rng& rng) {
  CheckNonEmpty(legal);
  if (eps > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < eps) {
    return RandomPolicy(legal, rng);
  }
  return GreedyAction(q, s, legal);
}

Action RandomPolicy(ActionSet legal, Rng& rng) {
  CheckNonEmpty(legal);
  const int n = legal.size();
  if (n == 1) return legal.front();
  return legal.nth(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

double StateValue(const QTable& q, StateKey s) {
  double best = 0.0;
  bool found = false;
  for (int id = 0; id <= Action::kMaxId; ++id) {
    const Action a(id);
    if (!q.contains(s, a)) continue;
    const double v = q.value(s, a);
    if (!found || v > best) {
      best = v;
      found = true;
    }
  }
  return best;
}

void QLearningUpdate(QTable& q, const Transition& t, const LearnerConfig& cfg) {
  double target = t.reward;
  if (!t.terminal()) target += cfg.gamma * MaxValue(q, *t.next_state, t.next_legal);
  const double old = q.value(t.state, t.action);
  q.set_value(t.state, t.action, old + cfg.alpha * (target - old));
}

void ExpectedSarsaUpdate(QTable& q, const Transition& t, const LearnerConfig& cfg) {
  double target = t.reward;
  if (!t.terminal() && !t.next_legal.empty()) {
    double sum = 0.0;
    for (Action a : t.next_legal) sum += q.value(*t.next_state, a);
    const double max = MaxValue(q, *t.next_state, t.next_legal);
    const double expectation =
        (1.0 - cfg.epsilon) * max + (cfg.epsilon / t.next_legal.size()) * sum;
    target += cfg.gamma * expectation;
  }
  const double old = q.value(t.state, t.action);
  q.set_value(t.state, t.action, old + cfg.alpha * (target - old));
}

void MonteCarloUpdate(QTable& q, const EpisodeLog& episode, const LearnerConfig& cfg) {
  if (episode.empty()) return;
  if (!episode.back().terminal()) {
    throw std::invalid_argument("Monte Carlo update needs a complete episode");
  }
  q.set_tracks_visits(true);

  std::vector<double> returns(episode.size());
  double g = 0.0;
  for (std::size_t i = episode.size(); i-- > 0;) {
    g = episode[i].reward + cfg.gamma * g;
    returns[i] = g;
  }

  absl::flat_hash_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < episode.size(); ++i) {
    const Transition& t = episode[i];
    if (!seen.insert((t.state.code() << 5) | static_cast<std::uint64_t>(t.action.id())).second) {
      continue;
    }
    const std::uint32_t n = q.visits(t.state, t.action) + 1;
    const double old = q.value(t.state, t.action);
    q.set_value(t.state, t.action, old + (returns[i] - old) / n);
    q.set_visits(t.state, t.action, n);
  }
}

Action TablePolicy::Choose(const GameState& state) const {
  const ActionSet legal = LegalActions(state);
  if (state.to_move() == trained_seat_) {
    return GreedyAction(*table_, EncodeState(state), legal);
  }
  ActionSet mirrored_legal;
  for (Action a : legal) mirrored_legal.insert(MirrorAction(a));
  const Action choice = GreedyAction(*table_, EncodeState(Mirrored(state)), mirrored_legal);
  return MirrorAction(choice);
}

}  // namespace ur
