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

#ifndef UR_QTABLE_HPP_
#define UR_QTABLE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "ur/action.hpp"
#include "ur/encoding.hpp"

namespace ur {

// Tabular action values. Absent entries read as exactly 0.
class QTable {
 public:
  struct Entry {
    StateKey state;
    Action action;
    double value = 0.0;
    std::uint32_t visits = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  QTable() = default;
  explicit QTable(bool track_visits) : track_visits_(track_visits) {}

  double value(StateKey s, Action a) const {
    auto it = cells_.find(CellKey(s, a));
    return it == cells_.end() ? 0.0 : it->second.value;
  }
  std::uint32_t visits(StateKey s, Action a) const {
    auto it = cells_.find(CellKey(s, a));
    return it == cells_.end() ? 0u : it->second.visits;
  }

  void set_value(StateKey s, Action a, double v) { cells_[CellKey(s, a)].value = v; }
  void set_visits(StateKey s, Action a, std::uint32_t n) { cells_[CellKey(s, a)].visits = n; }

  bool contains(StateKey s, Action a) const { return cells_.contains(CellKey(s, a)); }

  // Visit counts are only kept by Monte Carlo tables.
  bool tracks_visits() const { return track_visits_; }
  void set_tracks_visits(bool on) { track_visits_ = on; }

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  // Every stored entry, sorted by (state code, action).
  std::vector<Entry> SortedEntries() const;

  // Entries with equal keys, values and visit counts.
  friend bool operator==(const QTable& a, const QTable& b);

 private:
  struct Cell {
    double value = 0.0;
    std::uint32_t visits = 0;
  };

  static std::uint64_t CellKey(StateKey s, Action a) {
    return (s.code() << 5) | static_cast<std::uint64_t>(a.id());
  }

  absl::flat_hash_map<std::uint64_t, Cell> cells_;
  bool track_visits_ = false;
};

}  // namespace ur

#endif  // UR_QTABLE_HPP_
