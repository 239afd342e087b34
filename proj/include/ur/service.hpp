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

// Live games of a human against a loaded table.
//
// GameService holds the sessions and produces JSON bodies; the HTTP layer in
// http_server.hpp only routes requests to it. The table is read-only once the
// service is constructed. Requests to one session are serialized by that
// session's mutex; different sessions proceed in parallel.

#ifndef UR_SERVICE_HPP_
#define UR_SERVICE_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "json.hpp"
#include "ur/agents.hpp"
#include "ur/qtable.hpp"
#include "ur/rules.hpp"
#include "ur/storage.hpp"

namespace ur {

struct HistoryEntry {
  Seat seat = Seat::kP1;
  int dice = 0;
  Action action;
  MoveEvents events;
};

// Rebuilds a position from the initial state by replaying recorded plies.
GameState ReplayHistory(const RulesConfig& rules, const std::vector<HistoryEntry>& history);

struct ServiceConfig {
  std::chrono::seconds idle_timeout{3600};
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  GameService(QTable table, TableMeta meta, ServiceConfig config = {},
              std::function<Clock::time_point()> now = Clock::now);

  // POST /api/games
  ApiResponse CreateSession(std::string_view body);
  // GET /api/games/{id}
  ApiResponse GetState(std::string_view id);
  // POST /api/games/{id}/moves
  ApiResponse SubmitMove(std::string_view id, std::string_view body);
  // GET /api/meta
  ApiResponse Meta() const;

  // Drops sessions idle for longer than the configured timeout.
  std::size_t EvictIdle();
  std::size_t session_count() const;

  // Introspection for tests and tools.
  std::optional<GameState> SessionState(std::string_view id) const;
  std::optional<std::vector<HistoryEntry>> SessionHistory(std::string_view id) const;

 private:
  struct Session;

  std::shared_ptr<Session> Find(std::string_view id) const;
  void PlayAgent(Session& s) const;
  void RollFor(Session& s) const;
  nlohmann::json View(const Session& s) const;
  void Touch(Session& s) const;

  QTable table_;
  TableMeta meta_;
  ServiceConfig config_;
  std::function<Clock::time_point()> now_;

  mutable std::mutex sessions_mu_;
  absl::flat_hash_map<std::string, std::shared_ptr<Session>> sessions_;
  Rng id_rng_;
};

}  // namespace ur

#endif  // UR_SERVICE_HPP_
