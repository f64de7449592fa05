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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "relim/problem.hpp"
#include "relim/relaxation.hpp"
#include "relim/strength_order.hpp"

namespace relim {

struct RelaxationSearchOptions {
  RelaxMode mode = RelaxMode::kWithUpgrades;
  bool allow_elimination = true;
  /// Upper bound on (|to| + 1)^|from| raw candidate maps.
  double budget = 1e9;
};

struct RelaxationMapping {
  LabelMap map;
  RelaxationReport report;
  /// Number of valid maps seen; the returned one is the canonical pick.
  std::size_t valid_maps = 0;
};

namespace detail {

class RelaxationSearch {
 public:
  RelaxationSearch(const Problem& from, const Problem& to, const RelaxationSearchOptions& opts)
      : from_(from), to_(to), opts_(opts), n_(from.alphabet_size()) {
    const LabelPoset poset = strength_order(from, Side::kPassive);
    candidates_.resize(n_);
    weakness_.resize(n_);
    for (int l = 0; l < n_; ++l) {
      const Label x = static_cast<Label>(l);
      candidates_[l] = opts.mode == RelaxMode::kWithUpgrades ? poset.up_set(x) : LabelSet::single(x);
      int above = 0;
      for (int y = 0; y < n_; ++y) above += poset.less(x, static_cast<Label>(y)) ? 1 : 0;
      weakness_[l] = above;
    }
    passive_at_.resize(n_);
    for (Word& w : expand(from.passive)) {
      if (w.empty()) continue;
      const Label last = w.back();
      passive_at_[last].push_back(std::move(w));
    }
    active_at_.resize(n_);
    for (Word& w : expand(from.active)) {
      LabelSet reach;
      for (Label l : w) reach |= candidates_[l];
      int last = 0;
      reach.for_each([&](Label l) { last = l; });
      active_at_[last].push_back(std::move(w));
    }
  }

  std::optional<RelaxationMapping> run() {
    f_.image.assign(n_, std::nullopt);
    if (n_ == 0) {
      consider();
    } else {
      assign(0);
    }
    if (!best_) return std::nullopt;
    RelaxationMapping out;
    out.map = *best_;
    out.report = relaxation_check(from_, to_, *best_, opts_.mode);
    out.valid_maps = valid_;
    return out;
  }

 private:
  void assign(int l) {
    if (l == n_) {
      consider();
      return;
    }
    for (int t = 0; t < to_.alphabet_size(); ++t) {
      f_.image[l] = static_cast<Label>(t);
      if (consistent(l)) assign(l + 1);
    }
    if (opts_.allow_elimination) {
      f_.image[l] = std::nullopt;
      if (consistent(l)) assign(l + 1);
    }
    f_.image[l] = std::nullopt;
  }

  /// Checks every constraint word that became fully decided with label `l`.
  bool consistent(int l) {
    for (const Word& w : passive_at_[l]) {
      Word img;
      bool dropped = false;
      for (Label x : w) {
        if (!f_.image[x]) {
          dropped = true;
          break;
        }
        img.push_back(*f_.image[x]);
      }
      if (dropped) continue;
      std::sort(img.begin(), img.end());
      if (!passive_ok(img)) return false;
    }
    std::vector<LabelSet> slots;
    for (const Word& w : active_at_[l]) {
      slots.clear();
      for (Label x : w) {
        const LabelSet s = f_.apply(candidates_[x]);
        if (s.empty()) return false;
        slots.push_back(s);
      }
      if (!admits_choice(to_.active, slots)) return false;
    }
    return true;
  }

  bool passive_ok(const Word& img) {
    std::string key(img.begin(), img.end());
    auto it = passive_memo_.find(key);
    if (it != passive_memo_.end()) return it->second;
    const bool ok = member(to_.passive, img);
    passive_memo_.emplace(std::move(key), ok);
    return ok;
  }

  auto score(const LabelMap& m) const {
    int weak = 0;
    std::vector<int> gone;
    std::vector<int> img;
    for (int l = 0; l < n_; ++l) {
      if (!m.image[l]) {
        weak += weakness_[l];
        gone.push_back(-l);
      }
      img.push_back(m.image[l] ? -static_cast<int>(*m.image[l]) : 1);
    }
    return std::make_tuple(m.eliminated(), weak, gone, img);
  }

  void consider() {
    ++valid_;
    if (!best_ || score(f_) > score(*best_)) best_ = f_;
  }

  const Problem& from_;
  const Problem& to_;
  RelaxationSearchOptions opts_;
  int n_;
  std::vector<LabelSet> candidates_;
  std::vector<int> weakness_;
  std::vector<std::vector<Word>> passive_at_;
  std::vector<std::vector<Word>> active_at_;
  std::unordered_map<std::string, bool> passive_memo_;
  LabelMap f_;
  std::optional<LabelMap> best_;
  std::size_t valid_ = 0;
};

}  // namespace detail

/// Exhaustive search for a relaxation from `from` to `to`. Among all valid
/// maps it returns the one eliminating the most labels, then the weakest
/// labels, then the lowest label ids, then the lexicographically smallest
/// image.
inline std::optional<RelaxationMapping> find_relaxation_mapping(
    const Problem& from, const Problem& to, const RelaxationSearchOptions& opts = {}) {
  if (from.active.degree() != to.active.degree() ||
      from.passive.degree() != to.passive.degree()) {
    throw DegreeMismatch("relaxation search between problems with different degrees");
  }
  const double space = std::pow(static_cast<double>(to.alphabet_size() + 1), from.alphabet_size());
  if (space > opts.budget) {
    throw BudgetExceeded("relaxation search space " + std::to_string(space) + " exceeds budget");
  }
  return detail::RelaxationSearch(from, to, opts).run();
}

}  // namespace relim
