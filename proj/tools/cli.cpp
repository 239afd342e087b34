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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ur/agents.hpp"
#include "ur/encoding.hpp"
#include "ur/env.hpp"
#include "ur/http_server.hpp"
#include "ur/service.hpp"
#include "ur/storage.hpp"
#include "ur/training.hpp"

namespace ur::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainOptions {
  std::string algo = "q";
  int episodes = 100000;
  int pieces = 4;
  int dice = 2;
  bool reroll = false;
  std::uint64_t seed = 0;
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.1;
  int stride = 100;
  std::string out;
  std::string config;
};

std::string DescribeAction(Action a) {
  std::ostringstream os;
  os << a.id();
  if (a.is_null()) {
    os << " (pass)";
  } else if (auto sq = SquareForId(a.id())) {
    os << ' ' << ToString(*sq);
  } else if (a.id() == kStartPoolP1 || a.id() == kStartPoolP2) {
    os << " (enter a new piece)";
  }
  return os.str();
}

// Values from the JSON file fill every option not given on the command line.
void ApplyConfigFile(CLI::App& cmd, TrainOptions& o) {
  std::ifstream in(o.config);
  if (!in) throw IoError("cannot open config file '" + o.config + "'");
  const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("config file must hold a JSON object");

  auto fill = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || cmd.get_option(flag)->count() > 0) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  };
  fill("algo", "--algo", o.algo);
  fill("episodes", "--episodes", o.episodes);
  fill("pieces", "--pieces", o.pieces);
  fill("dice", "--dice", o.dice);
  fill("reroll", "--reroll", o.reroll);
  fill("seed", "--seed", o.seed);
  fill("alpha", "--alpha", o.alpha);
  fill("gamma", "--gamma", o.gamma);
  fill("epsilon", "--epsilon", o.epsilon);
  fill("stride", "--stride", o.stride);
  fill("out", "--out", o.out);
}

int RunTrain(CLI::App& cmd, TrainOptions o, std::ostream& out) {
  if (!o.config.empty()) ApplyConfigFile(cmd, o);
  if (o.out.empty()) throw UsageError("--out is required");
  const std::optional<Algorithm> algo = ParseAlgorithm(o.algo);
  if (!algo) throw UsageError("--algo must be one of q, esarsa, mc");

  TrainConfig cfg;
  cfg.episodes = o.episodes;
  cfg.rules = RulesConfig{o.pieces, o.dice, o.reroll};
  const LearnerConfig learner{o.alpha, o.gamma, o.epsilon, *algo};
  cfg.learners = {learner, learner};
  cfg.seed = o.seed;
  cfg.metrics_stride = o.stride;
  try {
    cfg.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw IoError("cannot create output directory '" + o.out + "': " + ec.message());

  const TrainResult result = Train(cfg);
  for (Seat seat : {Seat::kP1, Seat::kP2}) {
    TableMeta meta;
    meta.learner = learner;
    meta.rules = cfg.rules;
    meta.seed = cfg.seed;
    meta.episodes = result.episodes;
    meta.seat = seat;
    const std::string name = seat == Seat::kP1 ? "qtable_p1.tsv" : "qtable_p2.tsv";
    SaveQTable(result.tables[SeatIndex(seat)], meta, fs::path(o.out) / name);
  }
  WriteMetrics(result.metrics, fs::path(o.out) / "metrics.csv");

  const MetricsPoint& last = result.metrics.back();
  out << "algorithm: " << ToString(*algo) << '\n'
      << "episodes: " << result.episodes << '\n'
      << "entries_p1: " << result.tables[0].size() << '\n'
      << "entries_p2: " << result.tables[1].size() << '\n'
      << "tracked_value: " << FormatDouble(StateValue(result.tables[0], cfg.tracked_state)) << '\n'
      << "wins_p1: " << last.wins_p1 << '\n'
      << "wins_p2: " << last.wins_p2 << '\n'
      << "output: " << o.out << '\n';
  return kOk;
}

int RunEval(const std::string& table_path, int games, std::uint64_t seed, std::ostream& out) {
  if (games < 1) throw UsageError("--games must be at least 1");
  const auto [table, meta] = LoadQTable(table_path);
  const EvalResult r = Evaluate(table, games, meta.rules, seed, meta.seat);
  out << "games: " << r.games << '\n'
      << "agent_wins: " << r.agent_wins << '\n'
      << "opponent_wins: " << r.opponent_wins << '\n'
      << "win_rate: " << std::fixed << std::setprecision(4) << r.win_rate() << '\n'
      << "mean_plies: " << std::setprecision(2) << r.mean_plies << '\n';
  return kOk;
}

int RunProbe(const std::string& table_path, const std::string& position, const std::string& to_move,
             std::ostream& out) {
  const auto [table, meta] = LoadQTable(table_path);
  const std::optional<Seat> seat = ParseSeat(to_move);
  if (!seat) throw UsageError("--to-move must be P1 or P2");
  GameState state;
  try {
    state = DecodeState(StateKey::Parse(position), meta.rules, *seat);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --position: ") + e.what());
  }
  const ProbeResult r = Probe(table, state);
  out << "state: " << EncodeState(state).ToString() << '\n'
      << "to_move: " << SeatName(*seat) << '\n'
      << "greedy: " << DescribeAction(r.greedy) << '\n';
  for (const auto& [action, value] : r.readout) {
    out << "  q[" << DescribeAction(action) << "] = " << FormatDouble(value) << '\n';
  }
  return kOk;
}

int RunPlay(const std::string& table_path, const std::string& human_seat, std::optional<std::uint64_t> seed,
            std::istream& in, std::ostream& out) {
  const auto [table, meta] = LoadQTable(table_path);
  const std::optional<Seat> human = ParseSeat(human_seat);
  if (!human) throw UsageError("--seat must be P1 or P2");
  const TablePolicy agent(table, meta.seat);

  Rng rng(seed.value_or(std::random_device{}()));
  GameState state = GameState::Initial(meta.rules);
  out << "You play " << SeatName(*human) << " (row " << (*human == Seat::kP1 ? 'a' : 'c')
      << "). Enter the position ID of the piece to move, 0 to pass, q to quit.\n";
  while (!Winner(state)) {
    state = state.WithDice(RollDice(rng, meta.rules));
    const ActionSet legal = LegalActions(state);
    const Seat mover = state.to_move();
    Action action;
    if (mover == *human) {
      out << '\n' << RenderBoard(state) << SeatName(mover) << " rolled " << state.dice() << ". Legal:";
      for (Action a : legal) out << "  " << DescribeAction(a);
      out << "\n> " << std::flush;
      while (true) {
        std::string line;
        if (!std::getline(in, line) || line == "q") {
          out << "\nbye\n";
          return kOk;
        }
        int id = -1;
        std::istringstream(line) >> id;
        if (id >= 0 && id <= Action::kMaxId && legal.contains(Action(id))) {
          action = Action(id);
          break;
        }
        out << "not legal, try again> " << std::flush;
      }
    } else {
      action = agent.Choose(state);
      out << "agent (" << SeatName(mover) << ") rolled " << state.dice() << " and plays "
          << DescribeAction(action) << '\n';
    }
    const auto [next, events] = ApplyMove(state, action);
    if (events.captured_opponent) out << SeatName(mover) << " captures!\n";
    if (events.displaced_by_rosette) out << "rosette occupied; moved one square further\n";
    state = next;
  }
  out << '\n' << RenderBoard(state) << "Winner: " << SeatName(*Winner(state))
      << (*Winner(state) == *human ? " (you)" : " (agent)") << '\n';
  return kOk;
}

int RunServe(const std::string& table_path, int port, const std::string& host, int idle_seconds,
             std::ostream& out) {
  auto [table, meta] = LoadQTable(table_path);
  GameService service(std::move(table), meta, ServiceConfig{std::chrono::seconds(idle_seconds)});
  httplib::Server server;
  RegisterRoutes(server, service);
  out << "serving " << table_path << " on http://" << host << ':' << port << '\n' << std::flush;
  if (!server.listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return kOk;
}

}  // namespace

std::string RenderBoard(const GameState& state) {
  // Row strings indexed by column 1..8; '*' marks an empty rosette.
  auto cell = [&](const Square& sq) -> char {
    for (Seat seat : {Seat::kP1, Seat::kP2}) {
      if (auto idx = PathIndexOf(seat, sq); idx && state.side(seat).has_piece_at(*idx)) {
        return seat == Seat::kP1 ? 'X' : 'O';
      }
    }
    const Zone z = SquareZone(sq);
    return (z == Zone::kWarRosette || z == Zone::kPrivateRosette) ? '*' : '.';
  };
  std::ostringstream os;
  os << "    1 2 3 4 5 6 7 8\n";
  for (Row r : {Row::kA, Row::kB, Row::kC}) {
    os << "  " << static_cast<char>(r) << ' ';
    for (int c = 1; c <= 8; ++c) {
      const Square sq{r, c};
      os << (IsValidSquare(sq) ? cell(sq) : ' ') << ' ';
    }
    os << '\n';
  }
  os << "  P1 (X) hand " << state.in_hand(Seat::kP1) << " off " << state.borne_off(Seat::kP1)
     << " | P2 (O) hand " << state.in_hand(Seat::kP2) << " off " << state.borne_off(Seat::kP2) << '\n';
  return os.str();
}

int Run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Royal Game of Ur reinforcement-learning workbench", "ur"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  CLI::App* train = app.add_subcommand("train", "Train two tables by self-play");
  train->add_option("--algo", train_opts.algo, "q, esarsa or mc");
  train->add_option("--episodes", train_opts.episodes, "Number of episodes");
  train->add_option("--pieces", train_opts.pieces, "Pieces per player");
  train->add_option("--dice", train_opts.dice, "Number of binary dice (2 or 4)");
  train->add_flag("--reroll", train_opts.reroll, "Roll again after a maximal throw (4 dice only)");
  train->add_option("--seed", train_opts.seed, "Random seed");
  train->add_option("--alpha", train_opts.alpha, "Step size");
  train->add_option("--gamma", train_opts.gamma, "Discount");
  train->add_option("--epsilon", train_opts.epsilon, "Exploration probability");
  train->add_option("--stride", train_opts.stride, "Record metrics every N episodes");
  train->add_option("--out", train_opts.out, "Output directory");
  train->add_option("--config", train_opts.config, "JSON file with defaults for the options above");

  std::string table_path;
  int games = 100;
  std::uint64_t eval_seed = 0;
  CLI::App* eval = app.add_subcommand("eval", "Play a table against the uniform-random policy");
  eval->add_option("--table", table_path, "Q-table file")->required();
  eval->add_option("--games", games, "Number of games");
  eval->add_option("--seed", eval_seed, "Random seed");

  std::string position;
  std::string to_move = "P1";
  CLI::App* probe = app.add_subcommand("probe", "Show the greedy choice at a position");
  probe->add_option("--table", table_path, "Q-table file")->required();
  probe->add_option("--position", position, "State key, e.g. \"((3, ((b,8),)), (3, ((b,5),)), 1)\"")
      ->required();
  probe->add_option("--to-move", to_move, "Seat to move (P1 or P2)");

  std::string human_seat = "P1";
  std::uint64_t play_seed = 0;
  CLI::App* play = app.add_subcommand("play", "Play against a table in the terminal");
  play->add_option("--table", table_path, "Q-table file")->required();
  play->add_option("--seat", human_seat, "Your seat (P1 or P2)");
  CLI::Option* play_seed_opt = play->add_option("--seed", play_seed, "Random seed");

  int port = 8080;
  std::string host = "127.0.0.1";
  int idle_seconds = 3600;
  CLI::App* serve = app.add_subcommand("serve", "Serve live games over HTTP");
  serve->add_option("--table", table_path, "Q-table file")->required();
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--idle-timeout", idle_seconds, "Seconds before an idle session is dropped");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train) return RunTrain(*train, train_opts, out);
    if (*eval) return RunEval(table_path, games, eval_seed, out);
    if (*probe) return RunProbe(table_path, position, to_move, out);
    if (*play) {
      return RunPlay(table_path, human_seat,
                     play_seed_opt->count() ? std::optional<std::uint64_t>(play_seed) : std::nullopt, in, out);
    }
    if (*serve) return RunServe(table_path, port, host, idle_seconds, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kIo;
  } catch (const InvariantBreach& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ur::cli
