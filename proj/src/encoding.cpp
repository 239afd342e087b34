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

#include "ur/encoding.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

namespace ur {
namespace {

// Packed layout, low bits first:
//   [0,3)   dice
//   [3,6)   P1 in hand      [6,20)  P1 occupancy of path indices 1..14
//   [20,23) P2 in hand      [23,37) P2 occupancy
constexpr int kDiceBits = 3;
constexpr int kHandBits = 3;
constexpr int kOccBits = 14;
constexpr int kSideBits = kHandBits + kOccBits;

constexpr int SideShift(Seat s) { return kDiceBits + SeatIndex(s) * kSideBits; }

// Column order of the private-lane IDs: 1,2,3,4,7,8.
int LaneSlot(int column) { return column <= 4 ? column - 1 : column - 3; }
int LaneColumn(int slot) { return slot < 4 ? slot + 1 : slot + 3; }

class KeyParser {
 public:
  explicit KeyParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c)) && c != '\'' && c != '"') s_.push_back(c);
    }
  }

  StateKey Parse() {
    std::array<int, 2> hands{};
    std::array<std::vector<Square>, 2> squares;
    Expect('(');
    for (int seat = 0; seat < 2; ++seat) {
      Expect('(');
      hands[seat] = Int();
      Expect(',');
      Expect('(');
      while (Peek() == '(') {
        Expect('(');
        Square sq;
        const char r = Next();
        if (r != 'a' && r != 'b' && r != 'c') Fail("row must be a, b or c");
        sq.row = static_cast<Row>(r);
        Expect(',');
        sq.column = Int();
        Expect(')');
        squares[seat].push_back(sq);
        if (Peek() == ',') Expect(',');
      }
      Expect(')');
      Expect(')');
      Expect(',');
    }
    const int dice = Int();
    Expect(')');
    if (pos_ != s_.size()) Fail("trailing characters");

    if (dice < 0 || dice > 4) Fail("dice out of range");
    std::array<std::uint16_t, 2> occupancy{};
    std::uint64_t code = static_cast<std::uint64_t>(dice);
    for (Seat seat : {Seat::kP1, Seat::kP2}) {
      const int i = SeatIndex(seat);
      if (hands[i] < 0 || hands[i] > 7) Fail("hand count out of range");
      std::uint16_t occ = 0;
      for (const Square& sq : squares[i]) {
        const std::optional<PathIndex> idx = PathIndexOf(seat, sq);
        if (!idx) Fail("square " + ToString(sq) + " is not on the route of " + std::string(SeatName(seat)));
        if ((occ >> *idx) & 1u) Fail("duplicate square " + ToString(sq));
        occ |= static_cast<std::uint16_t>(1u << *idx);
      }
      occupancy[i] = occ;
      code |= (static_cast<std::uint64_t>(hands[i]) | (static_cast<std::uint64_t>(occ >> 1) << kHandBits))
              << SideShift(seat);
    }
    for (PathIndex idx = kFirstWarIndex; idx <= kLastWarIndex; ++idx) {
      if ((occupancy[0] >> idx) & (occupancy[1] >> idx) & 1u) {
        Fail("both seats on " + ToString(PathSquare(Seat::kP1, idx)));
      }
    }
    return StateKey::FromCode(code);
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const {
    throw StateKeyError("malformed state key at offset " + std::to_string(pos_) + ": " + why);
  }
  char Peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char Next() {
    if (pos_ >= s_.size()) Fail("unexpected end");
    return s_[pos_++];
  }
  void Expect(char c) {
    if (Next() != c) Fail(std::string("expected '") + c + "'");
  }
  int Int() {
    if (!std::isdigit(static_cast<unsigned char>(Peek()))) Fail("expected digit");
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(Peek())) && v < 1000) v = v * 10 + (Next() - '0');
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

int PositionId(const Square& sq) {
  if (!IsValidSquare(sq)) throw RulesError("not a board square: " + ToString(sq));
  switch (sq.row) {
    case Row::kB:
      return sq.column;
    case Row::kA:
      return 9 + LaneSlot(sq.column);
    case Row::kC:
      return 15 + LaneSlot(sq.column);
  }
  return 0;
}

std::optional<Square> SquareForId(int id) {
  if (id >= 1 && id <= 8) return Square{Row::kB, id};
  if (id >= 9 && id <= 14) return Square{Row::kA, LaneColumn(id - 9)};
  if (id >= 15 && id <= 20) return Square{Row::kC, LaneColumn(id - 15)};
  return std::nullopt;
}

Action ActionForPiece(Seat seat, PathIndex idx) {
  if (idx == kInHand) return Action(seat == Seat::kP1 ? kStartPoolP1 : kStartPoolP2);
  if (idx < 1 || idx > kRouteLength) {
    throw RulesError("path index " + std::to_string(idx) + " is not actionable");
  }
  return Action(PositionId(PathSquare(seat, idx)));
}

std::optional<PathIndex> PieceForAction(Seat seat, Action action) {
  const int id = action.id();
  if (id == (seat == Seat::kP1 ? kStartPoolP1 : kStartPoolP2)) return kInHand;
  const std::optional<Square> sq = SquareForId(id);
  if (!sq) return std::nullopt;
  return PathIndexOf(seat, *sq);
}

Action MirrorAction(Action action) {
  const int id = action.id();
  if (id >= 9 && id <= 14) return Action(id + 6);
  if (id >= 15 && id <= 20) return Action(id - 6);
  if (id == kStartPoolP1) return Action(kStartPoolP2);
  if (id == kStartPoolP2) return Action(kStartPoolP1);
  if (id == kFinishedPoolP1) return Action(kFinishedPoolP2);
  if (id == kFinishedPoolP2) return Action(kFinishedPoolP1);
  return action;
}

int StateKey::in_hand(Seat s) const {
  return static_cast<int>((code_ >> SideShift(s)) & ((1u << kHandBits) - 1));
}

std::uint16_t StateKey::occupied(Seat s) const {
  const auto bits = (code_ >> (SideShift(s) + kHandBits)) & ((1u << kOccBits) - 1);
  return static_cast<std::uint16_t>(bits << 1);
}

int StateKey::dice() const { return static_cast<int>(code_ & ((1u << kDiceBits) - 1)); }

std::string StateKey::ToString() const {
  std::string out = "(";
  for (Seat seat : {Seat::kP1, Seat::kP2}) {
    std::vector<Square> squares;
    const std::uint16_t occ = occupied(seat);
    for (PathIndex i = 1; i <= kRouteLength; ++i) {
      if ((occ >> i) & 1u) squares.push_back(PathSquare(seat, i));
    }
    std::sort(squares.begin(), squares.end());
    out += '(';
    out += std::to_string(in_hand(seat));
    out += ", (";
    for (std::size_t i = 0; i < squares.size(); ++i) {
      if (i > 0) out += ',';
      out += ur::ToString(squares[i]);
    }
    if (squares.size() == 1) out += ',';
    out += ")), ";
  }
  out += std::to_string(dice());
  out += ')';
  return out;
}

StateKey StateKey::Parse(std::string_view text) { return KeyParser(text).Parse(); }

StateKey EncodeState(const GameState& state) {
  if (!state.dice_rolled()) throw RulesError("cannot encode a state with unrolled dice");
  std::uint64_t code = static_cast<std::uint64_t>(state.dice());
  for (Seat seat : {Seat::kP1, Seat::kP2}) {
    const SideState& side = state.side(seat);
    code |= (static_cast<std::uint64_t>(side.in_hand) |
             (static_cast<std::uint64_t>(side.occupied >> 1) << kHandBits))
            << SideShift(seat);
  }
  return StateKey::FromCode(code);
}

GameState DecodeState(const StateKey& key, const RulesConfig& config, Seat to_move) {
  std::array<SideState, 2> sides;
  for (Seat seat : {Seat::kP1, Seat::kP2}) {
    SideState& side = sides[SeatIndex(seat)];
    side.in_hand = static_cast<std::uint8_t>(key.in_hand(seat));
    side.occupied = key.occupied(seat);
    const int placed = side.in_hand + side.on_board();
    if (placed > config.pieces_per_player) {
      throw RulesError("state key holds more pieces than pieces_per_player");
    }
    side.borne_off = static_cast<std::uint8_t>(config.pieces_per_player - placed);
  }
  return GameState::FromSides(config, sides[0], sides[1], to_move, key.dice());
}

}  // namespace ur
