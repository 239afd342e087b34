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

#include "ur/qtable.hpp"

#include <algorithm>
#include <cstring>

namespace ur {

std::vector<QTable::Entry> QTable::SortedEntries() const {
  std::vector<std::pair<std::uint64_t, Cell>> raw(cells_.begin(), cells_.end());
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Entry> out;
  out.reserve(raw.size());
  for (const auto& [key, cell] : raw) {
    out.push_back(Entry{StateKey::FromCode(key >> 5), Action(static_cast<int>(key & 31u)),
                        cell.value, cell.visits});
  }
  return out;
}

bool operator==(const QTable& a, const QTable& b) {
  if (a.track_visits_ != b.track_visits_ || a.cells_.size() != b.cells_.size()) return false;
  for (const auto& [key, cell] : a.cells_) {
    auto it = b.cells_.find(key);
    if (it == b.cells_.end() || it->second.visits != cell.visits) return false;
    // Bitwise comparison so that -0.0 vs 0.0 and NaN payloads count as different.
    if (std::memcmp(&it->second.value, &cell.value, sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace ur
