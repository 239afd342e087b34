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

// Position IDs and canonical state keys.
//
// Position IDs (the action space):
//   1..8    b1..b8
//   9..14   a1, a2, a3, a4, a7, a8
//   15..20  c1, c2, c3, c4, c7, c8
//   21, 22  start pools of P1, P2
//   23, 24  finished pools of P1, P2 (never a legal action)
//
// A StateKey renders as
//   ((H1, (SQ,...)), (H2, (SQ,...)), D)
// with SQ = (r,c), on-board squares sorted by (row, column), a trailing comma
// after a single square, and "()" for an empty board side. Example:
//   ((2, ((a,3),(a,4))), (3, ((c,3),)), 1)

#ifndef UR_ENCODING_HPP_
#define UR_ENCODING_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ur/action.hpp"
#include "ur/rules.hpp"

namespace ur {

inline constexpr int kStartPoolP1 = 21;
inline constexpr int kStartPoolP2 = 22;
inline constexpr int kFinishedPoolP1 = 23;
inline constexpr int kFinishedPoolP2 = 24;

int PositionId(const Square& sq);
// Square for IDs 1..20; empty for pools and null.
std::optional<Square> SquareForId(int id);

// Throws RulesError for idx outside 0..14 (borne-off pieces are not actionable).
Action ActionForPiece(Seat seat, PathIndex idx);
// Path index of the mover's piece the action names; empty when the action
// cannot name one of `seat`'s positions (null, opponent lane, finished pools).
std::optional<PathIndex> PieceForAction(Seat seat, Action action);

// Maps an action through the seat swap of Mirrored(): lanes a/c and the
// start pools trade IDs, row b is unchanged.
Action MirrorAction(Action action);

class StateKeyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Canonical key of a position with rolled dice. Internally a packed integer;
// equality of keys is equality of the rendered text.
class StateKey {
 public:
  constexpr StateKey() = default;
  static constexpr StateKey FromCode(std::uint64_t code) { return StateKey(code); }

  constexpr std::uint64_t code() const { return code_; }

  int in_hand(Seat s) const;
  std::uint16_t occupied(Seat s) const;
  int dice() const;

  std::string ToString() const;
  // Accepts the canonical text and looser spellings with whitespace and
  // quoted rows, e.g. ((3, (('a', 3),)), (3, (('c', 3),)), 1).
  static StateKey Parse(std::string_view text);

  friend constexpr auto operator<=>(const StateKey&, const StateKey&) = default;

 private:
  constexpr explicit StateKey(std::uint64_t code) : code_(code) {}
  std::uint64_t code_ = 0;
};

// Throws RulesError when the dice are unrolled.
StateKey EncodeState(const GameState& state);

// Rebuilds the position a key describes, with `to_move` to play. Borne-off
// counts are inferred from the piece count in `config`.
GameState DecodeState(const StateKey& key, const RulesConfig& config, Seat to_move);

}  // namespace ur

template <>
struct std::hash<ur::StateKey> {
  std::size_t operator()(const ur::StateKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.code());
  }
};

#endif  // UR_ENCODING_HPP_
