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

#include "ur/service.hpp"

#include <cassert>
#include <random>

#include "ur/encoding.hpp"

namespace ur {

using nlohmann::json;

struct GameService::Session {
  std::string id;
  RulesConfig rules;
  Seat human = Seat::kP1;
  GameState state;
  Rng rng;
  std::vector<HistoryEntry> history;
  ActionSet advertised;
  Clock::time_point last_access;
  std::mutex mu;
};

namespace {

ApiResponse Error(int status, std::string_view code, const std::string& message) {
  return ApiResponse{status, json{{"error", code}, {"message", message}}};
}

json SquareJson(Seat seat, PathIndex idx) {
  if (idx == kInHand || idx == kBorneOff) return nullptr;
  const Square sq = PathSquare(seat, idx);
  return json{{"row", std::string(1, static_cast<char>(sq.row))}, {"col", sq.column}};
}

json EventsJson(const MoveEvents& e) {
  return json{{"capturedOpponent", e.captured_opponent},
              {"landedWarRosette", e.landed_war_rosette},
              {"landedWarNonrosette", e.landed_war_nonrosette},
              {"borneOff", e.borne_off},
              {"displacedByRosette", e.displaced_by_rosette},
              {"gameWon", e.game_won}};
}

json HistoryJson(const HistoryEntry& h, const GameState& before) {
  json entry{{"seat", SeatName(h.seat)},
             {"dice", h.dice},
             {"action", h.action.id()},
             {"events", EventsJson(h.events)},
             {"from", nullptr},
             {"to", nullptr}};
  if (!h.action.is_null()) {
    const PathIndex from = *PieceForAction(h.seat, h.action);
    const MoveCheck check = CheckMove(before, from);
    entry["from"] = SquareJson(h.seat, from);
    entry["to"] = SquareJson(h.seat, check.dest);
  }
  return entry;
}

std::string NewId(Rng& rng) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 2; ++i) {
    std::uint64_t bits = rng();
    for (int j = 0; j < 16; ++j, bits >>= 4) id.push_back(kHex[bits & 15u]);
  }
  return id;
}

}  // namespace

GameState ReplayHistory(const RulesConfig& rules, const std::vector<HistoryEntry>& history) {
  GameState state = GameState::Initial(rules);
  for (const HistoryEntry& h : history) {
    if (state.to_move() != h.seat) throw RulesError("history seat out of turn order");
    state = ApplyMove(state.WithDice(h.dice), h.action).first;
  }
  return state;
}

GameService::GameService(QTable table, TableMeta meta, ServiceConfig config,
                         std::function<Clock::time_point()> now)
    : table_(std::move(table)),
      meta_(meta),
      config_(config),
      now_(std::move(now)),
      id_rng_(std::random_device{}()) {}

ApiResponse GameService::CreateSession(std::string_view body) {
  EvictIdle();
  json opts = json::object();
  if (!body.empty()) {
    opts = json::parse(body, nullptr, false);
    if (opts.is_discarded() || !opts.is_object()) {
      return Error(400, "bad_request", "options body must be a JSON object");
    }
  }

  auto session = std::make_shared<Session>();
  session->rules = meta_.rules;
  std::uint64_t seed = std::random_device{}();
  try {
    if (opts.contains("humanSeat")) {
      auto seat = ParseSeat(opts.at("humanSeat").get<std::string>());
      if (!seat) return Error(400, "bad_request", "humanSeat must be \"P1\" or \"P2\"");
      session->human = *seat;
    }
    if (opts.contains("pieces")) session->rules.pieces_per_player = opts.at("pieces").get<int>();
    if (opts.contains("dice")) session->rules.dice_count = opts.at("dice").get<int>();
    if (opts.contains("rerollOnMax")) session->rules.reroll_on_max = opts.at("rerollOnMax").get<bool>();
    if (opts.contains("seed")) seed = opts.at("seed").get<std::uint64_t>();
    session->rules.Validate();
  } catch (const json::exception& e) {
    return Error(400, "bad_request", std::string("invalid options: ") + e.what());
  } catch (const RulesError& e) {
    return Error(400, "bad_request", e.what());
  }

  session->rng.seed(seed);
  session->state = GameState::Initial(session->rules);
  session->last_access = now_();
  RollFor(*session);
  PlayAgent(*session);

  std::lock_guard<std::mutex> lock(sessions_mu_);
  do {
    session->id = NewId(id_rng_);
  } while (sessions_.contains(session->id));
  sessions_.emplace(session->id, session);
  return ApiResponse{201, View(*session)};
}

ApiResponse GameService::GetState(std::string_view id) {
  auto session = Find(id);
  if (!session) return Error(404, "not_found", "no session with id " + std::string(id));
  std::lock_guard<std::mutex> lock(session->mu);
  Touch(*session);
  return ApiResponse{200, View(*session)};
}

ApiResponse GameService::SubmitMove(std::string_view id, std::string_view body) {
  auto session = Find(id);
  if (!session) return Error(404, "not_found", "no session with id " + std::string(id));
  std::lock_guard<std::mutex> lock(session->mu);
  Session& s = *session;
  Touch(s);

  const json req = json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object() || !req.contains("action") || !req.at("action").is_number_integer()) {
    return Error(400, "bad_request", "body must be {\"action\": <int>}");
  }
  if (Winner(s.state)) return Error(409, "game_over", "the game has ended");
  if (s.state.to_move() != s.human) return Error(409, "not_your_turn", "the agent is to move");

  const long long raw = req.at("action").get<long long>();
  if (raw < 0 || raw > Action::kMaxId || !s.advertised.contains(Action(static_cast<int>(raw)))) {
    ApiResponse r = Error(422, "illegal_action", "action " + std::to_string(raw) + " is not legal");
    r.body["legalActions"] = s.advertised.ids();
    return r;
  }

  const Action action(static_cast<int>(raw));
  auto [next, events] = ApplyMove(s.state, action);
  s.history.push_back(HistoryEntry{s.human, s.state.dice(), action, events});
  s.state = next;
  RollFor(s);
  PlayAgent(s);
  assert(ReplayHistory(s.rules, s.history) == s.state.WithDice(GameState::kUnrolled));
  return ApiResponse{200, View(s)};
}

ApiResponse GameService::Meta() const {
  return ApiResponse{200, json{{"algorithm", ToString(meta_.learner.algorithm)},
                               {"alpha", meta_.learner.alpha},
                               {"gamma", meta_.learner.gamma},
                               {"epsilon", meta_.learner.epsilon},
                               {"pieces", meta_.rules.pieces_per_player},
                               {"dice", meta_.rules.dice_count},
                               {"rerollOnMax", meta_.rules.reroll_on_max},
                               {"seed", meta_.seed},
                               {"episodes", meta_.episodes},
                               {"seat", SeatName(meta_.seat)},
                               {"entries", table_.size()}}};
}

std::size_t GameService::EvictIdle() {
  const Clock::time_point cutoff = now_() - config_.idle_timeout;
  std::lock_guard<std::mutex> lock(sessions_mu_);
  std::size_t evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool idle;
    {
      std::lock_guard<std::mutex> session_lock(it->second->mu);
      idle = it->second->last_access < cutoff;
    }
    if (idle) {
      sessions_.erase(it++);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::size_t GameService::session_count() const {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  return sessions_.size();
}

std::optional<GameState> GameService::SessionState(std::string_view id) const {
  auto session = Find(id);
  if (!session) return std::nullopt;
  std::lock_guard<std::mutex> lock(session->mu);
  return session->state;
}

std::optional<std::vector<HistoryEntry>> GameService::SessionHistory(std::string_view id) const {
  auto session = Find(id);
  if (!session) return std::nullopt;
  std::lock_guard<std::mutex> lock(session->mu);
  return session->history;
}

std::shared_ptr<GameService::Session> GameService::Find(std::string_view id) const {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  auto it = sessions_.find(std::string(id));
  return it == sessions_.end() ? nullptr : it->second;
}

void GameService::RollFor(Session& s) const {
  if (Winner(s.state)) {
    s.advertised = ActionSet{};
    return;
  }
  s.state = s.state.WithDice(RollDice(s.rng, s.rules));
  s.advertised = LegalActions(s.state);
}

void GameService::PlayAgent(Session& s) const {
  const TablePolicy agent(table_, meta_.seat);
  while (!Winner(s.state) && s.state.to_move() != s.human) {
    const Action action = agent.Choose(s.state);
    auto [next, events] = ApplyMove(s.state, action);
    s.history.push_back(HistoryEntry{s.state.to_move(), s.state.dice(), action, events});
    s.state = next;
    RollFor(s);
  }
}

void GameService::Touch(Session& s) const { s.last_access = now_(); }

json GameService::View(const Session& s) const {
  json board = json::array();
  for (Seat seat : {Seat::kP1, Seat::kP2}) {
    for (PathIndex idx : s.state.pieces(seat)) {
      json cell = SquareJson(seat, idx);
      cell["seat"] = SeatName(seat);
      board.push_back(cell);
    }
  }
  json history = json::array();
  GameState cursor = GameState::Initial(s.rules);
  for (const HistoryEntry& h : s.history) {
    cursor = cursor.WithDice(h.dice);
    history.push_back(HistoryJson(h, cursor));
    cursor = ApplyMove(cursor, h.action).first;
  }
  const std::optional<Seat> winner = Winner(s.state);
  const bool human_turn = !winner && s.state.to_move() == s.human;
  return json{{"id", s.id},
              {"toMove", SeatName(s.state.to_move())},
              {"humanSeat", SeatName(s.human)},
              {"dice", s.state.dice_rolled() ? json(s.state.dice()) : json(nullptr)},
              {"legalActions", human_turn ? s.advertised.ids() : std::vector<int>{}},
              {"board", board},
              {"hands", {{"P1", s.state.in_hand(Seat::kP1)}, {"P2", s.state.in_hand(Seat::kP2)}}},
              {"borneOff", {{"P1", s.state.borne_off(Seat::kP1)}, {"P2", s.state.borne_off(Seat::kP2)}}},
              {"winner", winner ? json(SeatName(*winner)) : json(nullptr)},
              {"history", history}};
}

}  // namespace ur
