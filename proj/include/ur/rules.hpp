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

// Rules engine for the Royal Game of Ur.
//
// Board layout
// ------------
// Three rows of eight columns. Row b (the war zone) is complete; rows a and c
// only have columns 1-4 and 7-8, giving 20 squares. Row a is P1's private
// lane, row c is P2's.
//
//     a4 a3 a2 a1 .. .. a8 a7        <- P1 enters at a4, runs to a1
//     b1 b2 b3 b4 b5 b6 b7 b8        <- shared, both seats run b1 -> b8
//     c4 c3 c2 c1 .. .. c8 c7        <- P2 mirror of P1
//
// A piece's progress is a path index: 0 in hand, 1-4 own lane columns 4..1,
// 5-12 row b columns 1..8, 13-14 own lane columns 8 and 7, 15 borne off.
// Rosettes sit at path indices 4, 8 and 14; index 8 (b4) is the only one in
// the war zone. Since row b is traversed in the same direction by both seats,
// equal path indices in 5..12 name the same square for both seats.

#ifndef UR_RULES_HPP_
#define UR_RULES_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ur/action.hpp"

namespace ur {

using Rng = std::mt19937_64;

enum class Seat : std::uint8_t { kP1 = 0, kP2 = 1 };

constexpr Seat Opponent(Seat s) { return s == Seat::kP1 ? Seat::kP2 : Seat::kP1; }
constexpr int SeatIndex(Seat s) { return static_cast<int>(s); }
std::string_view SeatName(Seat s);
std::optional<Seat> ParseSeat(std::string_view name);

enum class Row : char { kA = 'a', kB = 'b', kC = 'c' };

struct Square {
  Row row = Row::kB;
  int column = 1;

  friend constexpr auto operator<=>(const Square&, const Square&) = default;
};

std::string ToString(const Square& sq);
bool IsValidSquare(const Square& sq);
// All 20 board squares, ordered by (row, column).
const std::vector<Square>& AllSquares();

enum class Zone { kSafePrivate, kWarPlain, kWarRosette, kPrivateRosette };

using PathIndex = int;
inline constexpr PathIndex kInHand = 0;
inline constexpr PathIndex kRouteLength = 14;
inline constexpr PathIndex kBorneOff = 15;
inline constexpr PathIndex kWarRosette = 8;
inline constexpr PathIndex kFirstWarIndex = 5;
inline constexpr PathIndex kLastWarIndex = 12;

constexpr bool IsWarIndex(PathIndex idx) {
  return idx >= kFirstWarIndex && idx <= kLastWarIndex;
}

class RulesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RulesConfig {
  int pieces_per_player = 4;
  int dice_count = 2;
  bool reroll_on_max = false;

  // Throws RulesError when a field is out of range.
  void Validate() const;

  friend bool operator==(const RulesConfig&, const RulesConfig&) = default;
};

Square PathSquare(Seat seat, PathIndex idx);
// Inverse of PathSquare; empty when the square is not on the seat's route.
std::optional<PathIndex> PathIndexOf(Seat seat, const Square& sq);
Zone SquareZone(const Square& sq);

// Count of marked corners over config.dice_count fair binary dice.
int RollDice(Rng& rng, const RulesConfig& config);

// Per-seat part of a position. Bit i of `occupied` is set when one of the
// seat's pieces stands on path index i (1..14).
struct SideState {
  std::uint8_t in_hand = 0;
  std::uint8_t borne_off = 0;
  std::uint16_t occupied = 0;

  int on_board() const;
  bool has_piece_at(PathIndex idx) const { return (occupied >> idx) & 1u; }

  friend bool operator==(const SideState&, const SideState&) = default;
};

struct MoveEvents {
  bool captured_opponent = false;
  bool landed_war_rosette = false;
  bool landed_war_nonrosette = false;
  bool borne_off = false;
  bool displaced_by_rosette = false;
  bool game_won = false;

  friend bool operator==(const MoveEvents&, const MoveEvents&) = default;
};

class GameState {
 public:
  static constexpr int kUnrolled = -1;

  // Fresh game: every piece in hand, P1 to move, dice unrolled.
  static GameState Initial(const RulesConfig& config);

  // Builds an arbitrary position, checking piece conservation and occupancy.
  // `dice` of kUnrolled leaves the dice unrolled.
  static GameState FromSides(const RulesConfig& config, SideState p1, SideState p2,
                             Seat to_move, int dice);

  const RulesConfig& config() const { return config_; }
  const SideState& side(Seat s) const { return sides_[SeatIndex(s)]; }
  Seat to_move() const { return to_move_; }
  bool dice_rolled() const { return dice_ != kUnrolled; }
  // Raw dice value, kUnrolled when not rolled.
  int dice() const { return dice_; }

  int in_hand(Seat s) const { return side(s).in_hand; }
  int borne_off(Seat s) const { return side(s).borne_off; }
  // Path indices of the seat's on-board pieces, ascending.
  std::vector<PathIndex> pieces(Seat s) const;

  GameState WithDice(int dice) const;
  GameState WithToMove(Seat s) const;

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  friend std::pair<GameState, MoveEvents> ApplyMove(const GameState&, Action);
  friend GameState Mirrored(const GameState&);

  RulesConfig config_;
  std::array<SideState, 2> sides_{};
  Seat to_move_ = Seat::kP1;
  int dice_ = kUnrolled;
};

enum class IllegalReason {
  kDiceUnrolled,
  kNotMoversPiece,
  kOccupiedBySelf,
  kOvershoot,
  kRosetteBlocked,
  kNullWithForwardMove,
  kGameOver,
};

std::string_view ToString(IllegalReason reason);

class IllegalMoveError : public std::invalid_argument {
 public:
  IllegalMoveError(IllegalReason reason, const std::string& detail);
  IllegalReason reason() const { return reason_; }

 private:
  IllegalReason reason_;
};

// Outcome of moving the piece at `from` by the rolled dice, without applying
// it. `dest` is the final resting index after any rosette displacement.
struct MoveCheck {
  std::optional<IllegalReason> error;
  PathIndex dest = 0;
  bool displaced = false;
};

MoveCheck CheckMove(const GameState& state, PathIndex from);

// Legal actions for the seat to move. Exactly {null} when the roll is zero
// or no piece can advance. Throws RulesError when the dice are unrolled.
ActionSet LegalActions(const GameState& state);

// Applies a legal action. The returned state has the dice unrolled and the
// other seat to move, except after a maximal roll with reroll_on_max set.
// Throws IllegalMoveError for anything not in LegalActions(state).
std::pair<GameState, MoveEvents> ApplyMove(const GameState& state, Action action);

std::optional<Seat> Winner(const GameState& state);

// Same position with the seats swapped; rows a and c trade places.
GameState Mirrored(const GameState& state);

}  // namespace ur

#endif  // UR_RULES_HPP_
