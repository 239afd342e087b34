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

#include "ur/storage.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <string_view>
#include <system_error>
#include <vector>

namespace ur {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kMetricsHeader = "episode,time_to_finish,tracked_value,wins_p1,wins_p2";

std::string Describe(const fs::path& path, const std::string& what) {
  return what + " '" + path.string() + "': " + std::strerror(errno);
}

// Writes through `body` into a sibling temporary, then renames over `path`.
void AtomicWrite(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(Describe(tmp, "cannot open for writing"));
    body(out);
    out.flush();
    if (!out) throw IoError(Describe(tmp, "write failed"));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

std::ifstream OpenForReading(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(Describe(path, "cannot open"));
  return in;
}

template <typename T>
T ParseNumber(std::string_view text, int line, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("line " + std::to_string(line) + ": bad " + std::string(what) + " '" +
                          std::string(text) + "'",
                      line);
  }
  return value;
}

bool ParseBool(std::string_view text, int line) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw FormatError("line " + std::to_string(line) + ": expected true or false", line);
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    out.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void SaveQTable(const QTable& q, const TableMeta& meta, const fs::path& path) {
  const std::vector<QTable::Entry> entries = q.SortedEntries();
  AtomicWrite(path, [&](std::ostream& out) {
    out << "#format_version: " << meta.format_version << '\n'
        << "#algorithm: " << ToString(meta.learner.algorithm) << '\n'
        << "#alpha: " << FormatDouble(meta.learner.alpha) << '\n'
        << "#gamma: " << FormatDouble(meta.learner.gamma) << '\n'
        << "#epsilon: " << FormatDouble(meta.learner.epsilon) << '\n'
        << "#pieces: " << meta.rules.pieces_per_player << '\n'
        << "#dice: " << meta.rules.dice_count << '\n'
        << "#reroll_on_max: " << (meta.rules.reroll_on_max ? "true" : "false") << '\n'
        << "#seed: " << meta.seed << '\n'
        << "#episodes: " << meta.episodes << '\n'
        << "#seat: " << SeatName(meta.seat) << '\n'
        << "#visits: " << (q.tracks_visits() ? "true" : "false") << '\n'
        << "#entries: " << entries.size() << '\n';
    std::string line;
    for (const QTable::Entry& e : entries) {
      line = e.state.ToString();
      line += '\t';
      line += std::to_string(e.action.id());
      line += '\t';
      line += FormatDouble(e.value);
      if (q.tracks_visits()) {
        line += '\t';
        line += std::to_string(e.visits);
      }
      line += '\n';
      out << line;
    }
  });
}

std::pair<QTable, TableMeta> LoadQTable(const fs::path& path) {
  std::ifstream in = OpenForReading(path);
  TableMeta meta;
  std::map<std::string, std::string, std::less<>> header;
  QTable table;
  bool visits = false;
  bool header_done = false;
  long expected_entries = -1;
  long entries = 0;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (header_done) throw FormatError("line " + std::to_string(line_no) + ": header after entries", line_no);
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw FormatError("line " + std::to_string(line_no) + ": header without ':'", line_no);
      }
      std::string_view key = line.substr(1, colon - 1);
      std::string_view value = line.substr(colon + 1);
      while (!value.empty() && value.front() == ' ') value.remove_prefix(1);

      if (key == "format_version") {
        meta.format_version = ParseNumber<int>(value, line_no, "format version");
        if (meta.format_version != kTableFormatVersion) {
          throw FormatError("unsupported table format version " + std::to_string(meta.format_version) +
                                " (expected " + std::to_string(kTableFormatVersion) + ")",
                            line_no);
        }
      } else if (key == "algorithm") {
        auto algo = ParseAlgorithm(value);
        if (!algo) throw FormatError("line " + std::to_string(line_no) + ": unknown algorithm", line_no);
        meta.learner.algorithm = *algo;
      } else if (key == "alpha") {
        meta.learner.alpha = ParseNumber<double>(value, line_no, "alpha");
      } else if (key == "gamma") {
        meta.learner.gamma = ParseNumber<double>(value, line_no, "gamma");
      } else if (key == "epsilon") {
        meta.learner.epsilon = ParseNumber<double>(value, line_no, "epsilon");
      } else if (key == "pieces") {
        meta.rules.pieces_per_player = ParseNumber<int>(value, line_no, "pieces");
      } else if (key == "dice") {
        meta.rules.dice_count = ParseNumber<int>(value, line_no, "dice");
      } else if (key == "reroll_on_max") {
        meta.rules.reroll_on_max = ParseBool(value, line_no);
      } else if (key == "seed") {
        meta.seed = ParseNumber<std::uint64_t>(value, line_no, "seed");
      } else if (key == "episodes") {
        meta.episodes = ParseNumber<int>(value, line_no, "episodes");
      } else if (key == "seat") {
        auto seat = ParseSeat(value);
        if (!seat) throw FormatError("line " + std::to_string(line_no) + ": unknown seat", line_no);
        meta.seat = *seat;
      } else if (key == "visits") {
        visits = ParseBool(value, line_no);
      } else if (key == "entries") {
        expected_entries = ParseNumber<long>(value, line_no, "entry count");
      } else {
        throw FormatError("line " + std::to_string(line_no) + ": unknown header '" + std::string(key) + "'",
                          line_no);
      }
      header.emplace(std::string(key), std::string(value));
      continue;
    }

    if (!header_done) {
      if (!header.contains("format_version")) throw FormatError("missing #format_version header", line_no);
      try {
        meta.rules.Validate();
      } catch (const RulesError& e) {
        throw FormatError(std::string("invalid rules in header: ") + e.what(), line_no);
      }
      table.set_tracks_visits(visits);
      header_done = true;
    }

    const std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() != (visits ? 4u : 3u)) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + (visits ? "4" : "3") +
                            " tab-separated fields",
                        line_no);
    }
    StateKey key;
    try {
      key = StateKey::Parse(fields[0]);
    } catch (const StateKeyError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    const int action_id = ParseNumber<int>(fields[1], line_no, "action");
    if (action_id < 0 || action_id > Action::kMaxId) {
      throw FormatError("line " + std::to_string(line_no) + ": action out of range", line_no);
    }
    const Action action(action_id);
    if (table.contains(key, action)) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate entry", line_no);
    }
    table.set_value(key, action, ParseNumber<double>(fields[2], line_no, "value"));
    if (visits) table.set_visits(key, action, ParseNumber<std::uint32_t>(fields[3], line_no, "visit count"));
    ++entries;
  }
  if (in.bad()) throw IoError(Describe(path, "read failed"));
  if (!header.contains("format_version")) throw FormatError("missing #format_version header", 0);
  if (!header_done) {
    meta.rules.Validate();
    table.set_tracks_visits(visits);
  }
  if (expected_entries >= 0 && expected_entries != entries) {
    throw FormatError("entry count mismatch: header says " + std::to_string(expected_entries) + ", found " +
                          std::to_string(entries),
                      0);
  }
  return {std::move(table), meta};
}

void WriteMetrics(const MetricsSeries& series, const fs::path& path) {
  AtomicWrite(path, [&](std::ostream& out) {
    out << kMetricsHeader << '\n';
    for (const MetricsPoint& p : series) {
      out << p.episode << ',' << p.time_to_finish << ',' << FormatDouble(p.tracked_value) << ','
          << p.wins_p1 << ',' << p.wins_p2 << '\n';
    }
  });
}

MetricsSeries ReadMetrics(const fs::path& path) {
  std::ifstream in = OpenForReading(path);
  std::string raw;
  int line_no = 0;
  MetricsSeries series;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kMetricsHeader) throw FormatError("line 1: unexpected metrics header", 1);
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string_view> f = Split(line, ',');
    if (f.size() != 5) throw FormatError("line " + std::to_string(line_no) + ": expected 5 columns", line_no);
    MetricsPoint p;
    p.episode = ParseNumber<int>(f[0], line_no, "episode");
    p.time_to_finish = ParseNumber<int>(f[1], line_no, "time_to_finish");
    p.tracked_value = ParseNumber<double>(f[2], line_no, "tracked_value");
    p.wins_p1 = ParseNumber<int>(f[3], line_no, "wins_p1");
    p.wins_p2 = ParseNumber<int>(f[4], line_no, "wins_p2");
    series.push_back(p);
  }
  if (line_no == 0) throw FormatError("empty metrics file", 0);
  return series;
}

}  // namespace ur
