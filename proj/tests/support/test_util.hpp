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

#ifndef UR_TESTS_TEST_UTIL_HPP_
#define UR_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "ur/rules.hpp"

namespace ur {

struct SideSpec {
  int hand = 0;
  int off = 0;
  std::vector<PathIndex> at;
};

inline SideState MakeSide(const SideSpec& spec) {
  SideState side;
  side.in_hand = static_cast<std::uint8_t>(spec.hand);
  side.borne_off = static_cast<std::uint8_t>(spec.off);
  for (PathIndex idx : spec.at) side.occupied |= static_cast<std::uint16_t>(1u << idx);
  return side;
}

inline GameState MakeState(const RulesConfig& cfg, const SideSpec& p1, const SideSpec& p2, Seat to_move,
                           int dice) {
  return GameState::FromSides(cfg, MakeSide(p1), MakeSide(p2), to_move, dice);
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("ur_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace ur

#endif  // UR_TESTS_TEST_UTIL_HPP_
