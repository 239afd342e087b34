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

// Q-table and metrics files.
//
// A table file is UTF-8 text. Header lines look like "#key: value"; every
// other line is one entry
//   STATEKEY<TAB>ACTION<TAB>VALUE[<TAB>COUNT]
// with VALUE in shortest round-trip decimal form. Entries are sorted, so equal
// tables produce identical files.
//
// Metrics files are CSV with the header
//   episode,time_to_finish,tracked_value,wins_p1,wins_p2

#ifndef UR_STORAGE_HPP_
#define UR_STORAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "ur/agents.hpp"
#include "ur/qtable.hpp"
#include "ur/rules.hpp"
#include "ur/training.hpp"

namespace ur {

inline constexpr int kTableFormatVersion = 1;

struct TableMeta {
  int format_version = kTableFormatVersion;
  LearnerConfig learner;
  RulesConfig rules;
  std::uint64_t seed = 0;
  int episodes = 0;
  Seat seat = Seat::kP1;

  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

// Failure to read or write a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported file content.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  // 1-based line number, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

// Writes via a temporary file renamed into place.
void SaveQTable(const QTable& q, const TableMeta& meta, const std::filesystem::path& path);
std::pair<QTable, TableMeta> LoadQTable(const std::filesystem::path& path);

void WriteMetrics(const MetricsSeries& series, const std::filesystem::path& path);
MetricsSeries ReadMetrics(const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `v`.
std::string FormatDouble(double v);

}  // namespace ur

#endif  // UR_STORAGE_HPP_
