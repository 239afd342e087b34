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

#include "ur/rules.hpp"

#include <bit>
#include <sstream>

#include "ur/encoding.hpp"

namespace ur {
namespace {

// Mask of path indices 1..14.
constexpr std::uint16_t kBoardMask = 0x7FFE;
constexpr std::uint16_t kWarMask = 0x1FE0;

std::string Describe(const GameState& state, PathIndex from) {
  std::ostringstream os;
  os << SeatName(state.to_move()) << " piece at path index " << from << " with roll "
     << state.dice();
  return os.str();
}

Row LaneOf(Seat seat) { return seat == Seat::kP1 ? Row::kA : Row::kC; }

}  // namespace

std::string_view SeatName(Seat s) { return s == Seat::kP1 ? "P1" : "P2"; }

std::optional<Seat> ParseSeat(std::string_view name) {
  if (name == "P1" || name == "p1" || name == "1") return Seat::kP1;
  if (name == "P2" || name == "p2" || name == "2") return Seat::kP2;
  return std::nullopt;
}

std::string ToString(const Square& sq) {
  std::string out = "(";
  out += static_cast<char>(sq.row);
  out += ',';
  out += std::to_string(sq.column);
  out += ')';
  return out;
}

bool IsValidSquare(const Square& sq) {
  switch (sq.row) {
    case Row::kB:
      return sq.column >= 1 && sq.column <= 8;
    case Row::kA:
    case Row::kC:
      return (sq.column >= 1 && sq.column <= 4) || sq.column == 7 || sq.column == 8;
  }
  return false;
}

const std::vector<Square>& AllSquares() {
  static const std::vector<Square> squares = [] {
    std::vector<Square> out;
    for (Row r : {Row::kA, Row::kB, Row::kC}) {
      for (int c = 1; c <= 8; ++c) {
        Square sq{r, c};
        if (IsValidSquare(sq)) out.push_back(sq);
      }
    }
    return out;
  }();
  return squares;
}

void RulesConfig::Validate() const {
  if (pieces_per_player < 1 || pieces_per_player > 7) {
    throw RulesError("pieces_per_player must be in 1..7, got " +
                     std::to_string(pieces_per_player));
  }
  if (dice_count != 2 && dice_count != 4) {
    throw RulesError("dice_count must be 2 or 4, got " + std::to_string(dice_count));
  }
}

Square PathSquare(Seat seat, PathIndex idx) {
  if (idx < 1 || idx > kRouteLength) {
    throw RulesError("path index out of range 1..14: " + std::to_string(idx));
  }
  if (IsWarIndex(idx)) return Square{Row::kB, idx - 4};
  if (idx <= 4) return Square{LaneOf(seat), 5 - idx};
  return Square{LaneOf(seat), idx == 13 ? 8 : 7};
}

std::optional<PathIndex> PathIndexOf(Seat seat, const Square& sq) {
  if (!IsValidSquare(sq)) return std::nullopt;
  if (sq.row == Row::kB) return sq.column + 4;
  if (sq.row != LaneOf(seat)) return std::nullopt;
  if (sq.column <= 4) return 5 - sq.column;
  return sq.column == 8 ? 13 : 14;
}

Zone SquareZone(const Square& sq) {
  if (!IsValidSquare(sq)) throw RulesError("not a board square: " + ToString(sq));
  if (sq.row == Row::kB) return sq.column == 4 ? Zone::kWarRosette : Zone::kWarPlain;
  return (sq.column == 1 || sq.column == 7) ? Zone::kPrivateRosette : Zone::kSafePrivate;
}

int RollDice(Rng& rng, const RulesConfig& config) {
  // Each die shows a marked corner with probability 1/2: one random bit per die.
  const std::uint64_t bits = rng();
  const std::uint64_t mask = (std::uint64_t{1} << config.dice_count) - 1;
  return std::popcount(bits & mask);
}

int SideState::on_board() const { return std::popcount(occupied); }

GameState GameState::Initial(const RulesConfig& config) {
  config.Validate();
  GameState s;
  s.config_ = config;
  for (auto& side : s.sides_) side.in_hand = static_cast<std::uint8_t>(config.pieces_per_player);
  return s;
}

GameState GameState::FromSides(const RulesConfig& config, SideState p1, SideState p2,
                               Seat to_move, int dice) {
  config.Validate();
  for (const SideState* side : {&p1, &p2}) {
    if ((side->occupied & ~kBoardMask) != 0) {
      throw RulesError("on-board pieces must sit on path indices 1..14");
    }
    if (side->in_hand + side->on_board() + side->borne_off != config.pieces_per_player) {
      throw RulesError("piece count does not match pieces_per_player");
    }
  }
  if ((p1.occupied & p2.occupied & kWarMask) != 0) {
    throw RulesError("two pieces share a war-zone square");
  }
  if (dice != kUnrolled && (dice < 0 || dice > config.dice_count)) {
    throw RulesError("dice value out of range: " + std::to_string(dice));
  }
  GameState s;
  s.config_ = config;
  s.sides_ = {p1, p2};
  s.to_move_ = to_move;
  s.dice_ = dice;
  return s;
}

std::vector<PathIndex> GameState::pieces(Seat s) const {
  std::vector<PathIndex> out;
  for (PathIndex i = 1; i <= kRouteLength; ++i) {
    if (side(s).has_piece_at(i)) out.push_back(i);
  }
  return out;
}

GameState GameState::WithDice(int dice) const {
  if (dice != kUnrolled && (dice < 0 || dice > config_.dice_count)) {
    throw RulesError("dice value out of range: " + std::to_string(dice));
  }
  GameState s = *this;
  s.dice_ = dice;
  return s;
}

GameState GameState::WithToMove(Seat seat) const {
  GameState s = *this;
  s.to_move_ = seat;
  return s;
}

std::string_view ToString(IllegalReason reason) {
  switch (reason) {
    case IllegalReason::kDiceUnrolled:
      return "dice-unrolled";
    case IllegalReason::kNotMoversPiece:
      return "not-movers-piece";
    case IllegalReason::kOccupiedBySelf:
      return "occupied-by-self";
    case IllegalReason::kOvershoot:
      return "overshoot";
    case IllegalReason::kRosetteBlocked:
      return "rosette-displacement-blocked";
    case IllegalReason::kNullWithForwardMove:
      return "null-with-forward-move";
    case IllegalReason::kGameOver:
      return "game-over";
  }
  return "unknown";
}

IllegalMoveError::IllegalMoveError(IllegalReason reason, const std::string& detail)
    : std::invalid_argument(std::string(ToString(reason)) + ": " + detail), reason_(reason) {}

MoveCheck CheckMove(const GameState& state, PathIndex from) {
  MoveCheck check;
  if (!state.dice_rolled()) {
    check.error = IllegalReason::kDiceUnrolled;
    return check;
  }
  const SideState& own = state.side(state.to_move());
  const SideState& opp = state.side(Opponent(state.to_move()));
  const bool has_piece = from == kInHand ? own.in_hand > 0
                                         : (from >= 1 && from <= kRouteLength && own.has_piece_at(from));
  if (!has_piece) {
    check.error = IllegalReason::kNotMoversPiece;
    return check;
  }

  PathIndex dest = from + state.dice();
  if (dest > kBorneOff) {
    check.error = IllegalReason::kOvershoot;
    return check;
  }
  if (dest < kBorneOff && own.has_piece_at(dest)) {
    check.error = IllegalReason::kOccupiedBySelf;
    return check;
  }
  if (dest == kWarRosette && opp.has_piece_at(kWarRosette)) {
    // The shielded occupant stays; the arriving piece moves one square on and
    // the new square is resolved from scratch.
    ++dest;
    check.displaced = true;
    if (dest > kBorneOff || (dest < kBorneOff && own.has_piece_at(dest))) {
      check.error = IllegalReason::kRosetteBlocked;
      return check;
    }
  }
  check.dest = dest;
  return check;
}

ActionSet LegalActions(const GameState& state) {
  if (!state.dice_rolled()) throw RulesError("legal actions requested with unrolled dice");
  ActionSet legal;
  if (Winner(state)) return legal;
  if (state.dice() == 0) return ActionSet{Action::Null()};

  const Seat mover = state.to_move();
  const SideState& own = state.side(mover);
  if (own.in_hand > 0 && !CheckMove(state, kInHand).error) {
    legal.insert(ActionForPiece(mover, kInHand));
  }
  for (std::uint16_t rest = own.occupied; rest != 0; rest &= rest - 1) {
    const PathIndex from = std::countr_zero(rest);
    if (!CheckMove(state, from).error) legal.insert(ActionForPiece(mover, from));
  }
  if (legal.empty()) legal.insert(Action::Null());
  return legal;
}

std::pair<GameState, MoveEvents> ApplyMove(const GameState& state, Action action) {
  if (!state.dice_rolled()) {
    throw IllegalMoveError(IllegalReason::kDiceUnrolled, "roll the dice before moving");
  }
  if (Winner(state)) throw IllegalMoveError(IllegalReason::kGameOver, "the game has ended");

  const Seat mover = state.to_move();
  const int roll = state.dice();
  GameState next = state;
  MoveEvents events;

  if (action.is_null()) {
    const ActionSet legal = LegalActions(state);
    if (!legal.contains(Action::Null())) {
      throw IllegalMoveError(IllegalReason::kNullWithForwardMove,
                             "a forward move exists for " + std::string(SeatName(mover)));
    }
  } else {
    const std::optional<PathIndex> from = PieceForAction(mover, action);
    if (!from) {
      throw IllegalMoveError(IllegalReason::kNotMoversPiece,
                             "action " + std::to_string(action.id()) + " does not name a position of " +
                                 std::string(SeatName(mover)));
    }
    const MoveCheck check = CheckMove(state, *from);
    if (check.error) throw IllegalMoveError(*check.error, Describe(state, *from));

    SideState& own = next.sides_[SeatIndex(mover)];
    SideState& opp = next.sides_[SeatIndex(Opponent(mover))];
    if (*from == kInHand) {
      --own.in_hand;
    } else {
      own.occupied &= static_cast<std::uint16_t>(~(1u << *from));
    }

    const PathIndex dest = check.dest;
    events.displaced_by_rosette = check.displaced;
    if (dest == kBorneOff) {
      ++own.borne_off;
      events.borne_off = true;
      events.game_won = own.borne_off == state.config().pieces_per_player;
    } else {
      own.occupied |= static_cast<std::uint16_t>(1u << dest);
      if (IsWarIndex(dest)) {
        if (opp.has_piece_at(dest)) {
          opp.occupied &= static_cast<std::uint16_t>(~(1u << dest));
          ++opp.in_hand;
          events.captured_opponent = true;
        }
        events.landed_war_rosette = dest == kWarRosette;
        events.landed_war_nonrosette = dest != kWarRosette;
      }
    }
  }

  const RulesConfig& cfg = state.config();
  const bool reroll = cfg.reroll_on_max && cfg.dice_count == 4 && roll == 4 && !events.game_won;
  if (!reroll) next.to_move_ = Opponent(mover);
  next.dice_ = GameState::kUnrolled;
  return {next, events};
}

std::optional<Seat> Winner(const GameState& state) {
  for (Seat s : {Seat::kP1, Seat::kP2}) {
    if (state.borne_off(s) == state.config().pieces_per_player) return s;
  }
  return std::nullopt;
}

GameState Mirrored(const GameState& state) {
  GameState out = state;
  std::swap(out.sides_[0], out.sides_[1]);
  out.to_move_ = Opponent(state.to_move_);
  return out;
}

}  // namespace ur
