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

#ifndef UR_TOOLS_CLI_HPP_
#define UR_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "ur/rules.hpp"

namespace ur::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kInvariant = 4,
};

// Runs one command line (args[0] is the program name) and returns the exit code.
int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Text diagram of the board for terminal play.
std::string RenderBoard(const GameState& state);

}  // namespace ur::cli

#endif  // UR_TOOLS_CLI_HPP_
