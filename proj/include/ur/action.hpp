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

#ifndef UR_ACTION_HPP_
#define UR_ACTION_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace ur {

// Board-position ID naming the piece to advance. 0 is the null action,
// 1..24 are board positions, start pools and finished pools.
class Action {
 public:
  static constexpr int kMaxId = 24;

  constexpr Action() = default;
  constexpr explicit Action(int id) : id_(static_cast<std::uint8_t>(id)) {
    if (id < 0 || id > kMaxId) {
      throw std::out_of_range("action id out of range: " + std::to_string(id));
    }
  }

  static constexpr Action Null() { return Action(); }

  constexpr int id() const { return id_; }
  constexpr bool is_null() const { return id_ == 0; }

  friend constexpr auto operator<=>(Action, Action) = default;

 private:
  std::uint8_t id_ = 0;
};

// Set of action IDs backed by a bitmask. Iteration is in ascending ID order,
// which is what the deterministic argmax tie-break relies on.
class ActionSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Action;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Action;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr Action operator*() const { return Action(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<Action> actions) {
    for (Action a : actions) insert(a);
  }

  static constexpr ActionSet FromMask(std::uint32_t mask) {
    ActionSet s;
    s.mask_ = mask & ((1u << (Action::kMaxId + 1)) - 1);
    return s;
  }

  constexpr void insert(Action a) { mask_ |= 1u << a.id(); }
  constexpr bool contains(Action a) const { return (mask_ >> a.id()) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr std::uint32_t mask() const { return mask_; }

  // Lowest ID; undefined on an empty set.
  constexpr Action front() const { return Action(std::countr_zero(mask_)); }

  // The n-th action in ascending order, 0 <= n < size().
  constexpr Action nth(int n) const {
    std::uint32_t rest = mask_;
    for (int i = 0; i < n; ++i) rest &= rest - 1;
    return Action(std::countr_zero(rest));
  }

  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (Action a : *this) out.push_back(a.id());
    return out;
  }

  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace ur

#endif  // UR_ACTION_HPP_
