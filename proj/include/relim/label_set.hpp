// Copyright 2026 The relim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace relim {

inline constexpr int kDefaultAlphabetCap = 16;
inline constexpr int kMaxAlphabetCap = 24;

/// Dense label id within one problem's alphabet.
using Label = std::uint8_t;

/// A multiset of labels, stored sorted.
using Word = std::vector<Label>;

/// Set of labels as a fixed-width bit vector (bit i = label i).
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr LabelSet single(Label l) { return LabelSet(1u << l); }
  static constexpr LabelSet first(int n) {
    return LabelSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Label l) const { return (bits_ >> l) & 1u; }
  constexpr void insert(Label l) { bits_ |= 1u << l; }
  constexpr void erase(Label l) { bits_ &= ~(1u << l); }

  constexpr bool subset_of(LabelSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool strict_subset_of(LabelSet o) const {
    return subset_of(o) && bits_ != o.bits_;
  }
  constexpr bool intersects(LabelSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr LabelSet operator|(LabelSet o) const { return LabelSet(bits_ | o.bits_); }
  constexpr LabelSet operator&(LabelSet o) const { return LabelSet(bits_ & o.bits_); }
  constexpr LabelSet minus(LabelSet o) const { return LabelSet(bits_ & ~o.bits_); }
  constexpr LabelSet& operator|=(LabelSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  constexpr auto operator<=>(const LabelSet&) const = default;

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<Label>(std::countr_zero(b)));
    }
  }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    out.reserve(size());
    for_each([&](Label l) { out.push_back(l); });
    return out;
  }

  constexpr Label lowest() const { return static_cast<Label>(std::countr_zero(bits_)); }

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace relim
