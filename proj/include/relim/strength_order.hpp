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

#include <algorithm>
#include <utility>
#include <vector>

#include "relim/problem.hpp"

namespace relim {

/// Substitutability preorder on labels with respect to one constraint:
/// x <= y iff y may replace one x in every word that contains x.
class LabelPoset {
 public:
  LabelPoset() = default;
  explicit LabelPoset(std::vector<LabelSet> ups) : up_(std::move(ups)) {}

  int size() const { return static_cast<int>(up_.size()); }
  bool leq(Label x, Label y) const { return up_[x].contains(y); }
  bool less(Label x, Label y) const { return leq(x, y) && !leq(y, x); }
  LabelSet up_set(Label x) const { return up_[x]; }

  LabelSet down_set(Label y) const {
    LabelSet s;
    for (int x = 0; x < size(); ++x) {
      if (leq(static_cast<Label>(x), y)) s.insert(static_cast<Label>(x));
    }
    return s;
  }

  bool is_right_closed(LabelSet s) const {
    bool ok = true;
    s.for_each([&](Label x) { ok = ok && up_[x].subset_of(s); });
    return ok;
  }

  LabelSet right_closure(LabelSet s) const {
    LabelSet out = s;
    s.for_each([&](Label x) { out |= up_[x]; });
    return out;
  }

  /// Classes of mutually substitutable labels, ordered by lowest member.
  std::vector<LabelSet> classes() const {
    std::vector<LabelSet> out;
    LabelSet done;
    for (int x = 0; x < size(); ++x) {
      if (done.contains(static_cast<Label>(x))) continue;
      LabelSet cls = up_[x] & down_set(static_cast<Label>(x));
      out.push_back(cls);
      done |= cls;
    }
    return out;
  }

  /// Covering pairs (lower, upper) between class representatives.
  std::vector<std::pair<Label, Label>> hasse_edges() const {
    const auto cls = classes();
    std::vector<Label> reps;
    for (LabelSet c : cls) reps.push_back(c.lowest());
    std::vector<std::pair<Label, Label>> out;
    for (Label a : reps) {
      for (Label b : reps) {
        if (!less(a, b)) continue;
        bool covered = true;
        for (Label c : reps) {
          if (less(a, c) && less(c, b)) covered = false;
        }
        if (covered) out.emplace_back(a, b);
      }
    }
    return out;
  }

  bool reflexive() const {
    for (int x = 0; x < size(); ++x) {
      if (!leq(static_cast<Label>(x), static_cast<Label>(x))) return false;
    }
    return true;
  }

  bool transitive() const {
    for (int x = 0; x < size(); ++x) {
      bool ok = true;
      up_[x].for_each([&](Label y) { ok = ok && up_[y].subset_of(up_[x]); });
      if (!ok) return false;
    }
    return true;
  }

  /// Reflexive and transitive; antisymmetry then holds on the quotient by
  /// `classes()` by construction.
  bool is_partial_order_after_quotient() const { return reflexive() && transitive(); }

 private:
  std::vector<LabelSet> up_;
};

inline LabelPoset strength_order(const Constraint& c, int alphabet_size) {
  const auto words = expand(c);
  std::vector<LabelSet> ups(alphabet_size);
  for (int x = 0; x < alphabet_size; ++x) {
    for (int y = 0; y < alphabet_size; ++y) {
      bool ok = true;
      for (const Word& w : words) {
        auto it = std::find(w.begin(), w.end(), static_cast<Label>(x));
        if (it == w.end()) continue;
        Word v = w;
        v[it - w.begin()] = static_cast<Label>(y);
        std::sort(v.begin(), v.end());
        if (!member(c, v)) {
          ok = false;
          break;
        }
      }
      if (ok) ups[x].insert(static_cast<Label>(y));
    }
  }
  return LabelPoset(std::move(ups));
}

inline LabelPoset strength_order(const Problem& p, Side side) {
  return strength_order(p.side(side), p.alphabet_size());
}

}  // namespace relim
