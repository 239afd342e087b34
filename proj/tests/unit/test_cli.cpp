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

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "test_util.hpp"
#include "ur/storage.hpp"

namespace ur {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "ur");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::Run(args, in, out, err);
  return {code, out.str(), err.str()};
}

TEST_SUITE("cli") {

TEST_CASE("usage errors") {
  CHECK(RunCli({}).code == cli::kUsage);
  CHECK(RunCli({"fly"}).code == cli::kUsage);
  CHECK(RunCli({"eval"}).code == cli::kUsage);
  CHECK(RunCli({"train", "--episodes", "10"}).code == cli::kUsage);
  TempDir dir;
  CHECK(RunCli({"train", "--algo", "sarsa", "--out", dir.path().string()}).code == cli::kUsage);
  CHECK(RunCli({"train", "--episodes", "0", "--out", dir.path().string()}).code == cli::kUsage);
  CHECK(RunCli({"train", "--dice", "3", "--out", dir.path().string()}).code == cli::kUsage);
  CHECK(RunCli({"--help"}).code == cli::kOk);
}

TEST_CASE("train writes tables and metrics") {
  TempDir dir;
  const Outcome r = RunCli({"train", "--algo", "esarsa", "--episodes", "50", "--seed", "3", "--stride", "10",
                            "--out", dir.path().string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("algorithm: expected_sarsa") != std::string::npos);
  CHECK(r.out.find("episodes: 50") != std::string::npos);
  const auto [p1, meta1] = LoadQTable(dir / "qtable_p1.tsv");
  const auto [p2, meta2] = LoadQTable(dir / "qtable_p2.tsv");
  CHECK_FALSE(p1.empty());
  CHECK(meta1.seat == Seat::kP1);
  CHECK(meta2.seat == Seat::kP2);
  CHECK(meta1.episodes == 50);
  CHECK(meta1.seed == 3);
  CHECK(meta1.learner.algorithm == Algorithm::kExpectedSarsa);
  CHECK(ReadMetrics(dir / "metrics.csv").size() == 5u);
}

TEST_CASE("identical command lines give identical files") {
  TempDir a, b;
  for (const TempDir* d : {&a, &b}) {
    REQUIRE(RunCli({"train", "--algo", "mc", "--episodes", "40", "--seed", "8", "--out", d->path().string()}).code ==
            cli::kOk);
  }
  for (const char* name : {"qtable_p1.tsv", "qtable_p2.tsv", "metrics.csv"}) {
    CHECK(ReadFile(a / name) == ReadFile(b / name));
  }
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir dir;
  const auto config = dir / "run.json";
  std::ofstream(config) << R"({"algo": "mc", "episodes": 30, "seed": 5, "gamma": 0.8, "stride": 5})";
  const auto out = dir / "out";
  const Outcome r = RunCli({"train", "--config", config.string(), "--episodes", "20", "--out", out.string()});
  REQUIRE(r.code == cli::kOk);
  const auto [q, meta] = LoadQTable(out / "qtable_p1.tsv");
  CHECK(meta.learner.algorithm == Algorithm::kMonteCarlo);
  CHECK(meta.learner.gamma == 0.8);
  CHECK(meta.episodes == 20);
  CHECK(meta.seed == 5);
  CHECK(ReadMetrics(out / "metrics.csv").size() == 4u);

  std::ofstream(config) << "{not json";
  CHECK(RunCli({"train", "--config", config.string(), "--out", out.string()}).code == cli::kUsage);
  CHECK(RunCli({"train", "--config", (dir / "absent.json").string(), "--out", out.string()}).code == cli::kIo);
}

TEST_CASE("eval, probe and play on a trained table") {
  TempDir dir;
  REQUIRE(RunCli({"train", "--episodes", "30", "--seed", "1", "--out", dir.path().string()}).code == cli::kOk);
  const std::string table = (dir / "qtable_p1.tsv").string();

  const Outcome e = RunCli({"eval", "--table", table, "--games", "20", "--seed", "2"});
  REQUIRE(e.code == cli::kOk);
  CHECK(e.out.find("games: 20") != std::string::npos);
  CHECK(e.out.find("win_rate: ") != std::string::npos);
  CHECK(RunCli({"eval", "--table", table, "--games", "0"}).code == cli::kUsage);

  const Outcome p = RunCli({"probe", "--table", table, "--position", "((3, ((b,8),)), (3, ((b,5),)), 1)"});
  REQUIRE(p.code == cli::kOk);
  CHECK(p.out.find("state: ((3, ((b,8),)), (3, ((b,5),)), 1)") != std::string::npos);
  CHECK(p.out.find("greedy: ") != std::string::npos);
  CHECK(p.out.find("q[") != std::string::npos);
  CHECK(RunCli({"probe", "--table", table, "--position", "((3, ((x,8),)), (4, ()), 1)"}).code == cli::kUsage);
  CHECK(RunCli({"probe", "--table", table, "--position", "((4, ()), (4, ()), 1)", "--to-move", "P9"}).code ==
        cli::kUsage);

  const Outcome quit = RunCli({"play", "--table", table, "--seed", "4"}, "q\n");
  CHECK(quit.code == cli::kOk);
  CHECK(quit.out.find("You play P1") != std::string::npos);
  CHECK(quit.out.find("bye") != std::string::npos);

  // Feed the lowest legal ID for a full game: 0, then every other ID in turn,
  // retrying until one is accepted. End of input also quits cleanly.
  std::string moves;
  for (int turn = 0; turn < 400; ++turn) {
    for (int id : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 21}) moves += std::to_string(id) + "\n";
  }
  const Outcome game = RunCli({"play", "--table", table, "--seed", "4"}, moves);
  CHECK(game.code == cli::kOk);
  CHECK(game.out.find("Winner: ") != std::string::npos);
}

TEST_CASE("file problems map to exit code 3") {
  TempDir dir;
  CHECK(RunCli({"eval", "--table", (dir / "missing.tsv").string()}).code == cli::kIo);
  std::ofstream(dir / "bad.tsv") << "#format_version: 9\n";
  const Outcome r = RunCli({"eval", "--table", (dir / "bad.tsv").string()});
  CHECK(r.code == cli::kIo);
  CHECK(r.err.find("version") != std::string::npos);
  std::ofstream(dir / "blocker") << "x";
  CHECK(RunCli({"train", "--episodes", "1", "--out", (dir / "blocker" / "sub").string()}).code == cli::kIo);
}

TEST_CASE("board rendering") {
  const GameState s = MakeState(RulesConfig{}, {3, 0, {8}}, {3, 0, {2}}, Seat::kP1, 1);
  const std::string board = cli::RenderBoard(s);
  CHECK(board.find('X') != std::string::npos);
  CHECK(board.find('O') != std::string::npos);
  CHECK(board.find("  a ") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace ur
