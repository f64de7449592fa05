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

// One round-elimination step.
//
// Given a problem whose active side needs T rounds, the result is a problem
// solvable in T - 1 rounds by the former passive side. Its labels are sets of
// old labels. The new active constraint (degree of the old passive side)
// lists the maximal families {S_1, ..., S_d} such that every choice
// x_i in S_i is an old passive word. The new passive constraint lists every
// multiset of those sets from which some choice is an old active word.

#pragma once

#include <algorithm>
#include <set>
#include <stop_token>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "relim/problem.hpp"
#include "relim/strength_order.hpp"

namespace relim {

struct SpeedupOptions {
  int alphabet_cap = kDefaultAlphabetCap;
  int threads = 1;
  std::stop_token stop;
};

struct SpeedupResult {
  Problem problem;
  Problem origin;
  /// Origin labels behind each new label.
  std::vector<LabelSet> dictionary;
};

/// Display name of a set label: member names in alphabet order, e.g. <M,O,X>.
inline std::string set_label_name(const Problem& origin, LabelSet s) {
  std::string out = "<";
  bool first = true;
  s.for_each([&](Label l) {
    if (!first) out += ',';
    out += origin.alphabet[l];
    first = false;
  });
  return out + ">";
}

/// Nonempty up-closed label sets, largest first.
inline std::vector<LabelSet> right_closed_sets(const LabelPoset& poset) {
  std::vector<LabelSet> out;
  const std::uint32_t n = static_cast<std::uint32_t>(poset.size());
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    if (poset.is_right_closed(LabelSet(bits))) out.emplace_back(bits);
  }
  std::sort(out.begin(), out.end(), [](LabelSet a, LabelSet b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

namespace detail {

class FamilySearch {
 public:
  FamilySearch(const Constraint& passive, const std::vector<LabelSet>& sets, std::stop_token stop)
      : passive_(passive), sets_(sets), stop_(std::move(stop)) {}

  /// Valid families whose first set index is congruent to `part` mod `parts`.
  std::vector<std::vector<std::size_t>> run(std::size_t part, std::size_t parts) {
    std::vector<std::vector<std::size_t>> found;
    std::vector<std::size_t> fam;
    const std::vector<Word> start{Word{}};
    for (std::size_t i = part; i < sets_.size(); i += parts) {
      extend(start, i, fam, found);
    }
    return found;
  }

 private:
  bool fits(const Word& w) {
    std::string key(w.begin(), w.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const bool ok = extends_to(passive_, w);
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  void extend(const std::vector<Word>& state, std::size_t idx, std::vector<std::size_t>& fam,
              std::vector<std::vector<std::size_t>>& found) {
    if (stop_.stop_requested()) throw Cancelled();
    std::vector<Word> next;
    next.reserve(state.size() * static_cast<std::size_t>(sets_[idx].size()));
    for (const Word& w : state) {
      sets_[idx].for_each([&](Label l) {
        Word v = w;
        v.insert(std::upper_bound(v.begin(), v.end(), l), l);
        next.push_back(std::move(v));
      });
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (const Word& w : next) {
      if (!fits(w)) return;
    }
    fam.push_back(idx);
    if (static_cast<int>(fam.size()) == passive_.degree()) {
      found.push_back(fam);
    } else {
      for (std::size_t j = idx; j < sets_.size(); ++j) extend(next, j, fam, found);
    }
    fam.pop_back();
  }

  const Constraint& passive_;
  const std::vector<LabelSet>& sets_;
  std::stop_token stop_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace detail

/// Maximal families of right-closed sets whose every choice word lies in
/// `passive`. Each family is sorted by set bits; the list is sorted.
inline std::vector<std::vector<LabelSet>> maximal_families(const Constraint& passive,
                                                           const LabelPoset& poset,
                                                           const SpeedupOptions& opts = {}) {
  const auto sets = right_closed_sets(poset);
  const std::size_t parts = static_cast<std::size_t>(std::max(1, opts.threads));

  std::vector<std::vector<std::vector<std::size_t>>> chunks(parts);
  if (parts == 1) {
    chunks[0] = detail::FamilySearch(passive, sets, opts.stop).run(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(parts);
    {
      std::vector<std::jthread> workers;
      for (std::size_t t = 0; t < parts; ++t) {
        workers.emplace_back([&, t] {
          try {
            chunks[t] = detail::FamilySearch(passive, sets, opts.stop).run(t, parts);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::set<std::vector<LabelSet>> valid;
  for (const auto& chunk : chunks) {
    for (const auto& fam : chunk) {
      std::vector<LabelSet> f;
      for (std::size_t i : fam) f.push_back(sets[i]);
      std::sort(f.begin(), f.end());
      valid.insert(std::move(f));
    }
  }

  std::vector<std::vector<LabelSet>> out;
  for (const auto& fam : valid) {
    bool maximal = true;
    for (std::size_t i = 0; i < fam.size() && maximal; ++i) {
      if (i > 0 && fam[i] == fam[i - 1]) continue;
      for (LabelSet t : sets) {
        if (!fam[i].strict_subset_of(t)) continue;
        auto g = fam;
        g[i] = t;
        std::sort(g.begin(), g.end());
        if (valid.count(g)) {
          maximal = false;
          break;
        }
      }
    }
    if (maximal) out.push_back(fam);
  }
  return out;
}

inline SpeedupResult speedup(const Problem& p, const SpeedupOptions& opts = {}) {
  if (p.alphabet_size() > opts.alphabet_cap) {
    throw AlphabetCapExceeded("alphabet of " + std::to_string(p.alphabet_size()) +
                              " labels exceeds cap " + std::to_string(opts.alphabet_cap));
  }
  const LabelPoset poset = strength_order(p, Side::kPassive);
  const auto families = maximal_families(p.passive, poset, opts);

  std::vector<LabelSet> dict;
  for (const auto& fam : families) dict.insert(dict.end(), fam.begin(), fam.end());
  std::sort(dict.begin(), dict.end());
  dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
  if (static_cast<int>(dict.size()) > opts.alphabet_cap) {
    throw AlphabetCapExceeded("speedup needs " + std::to_string(dict.size()) +
                              " labels, cap is " + std::to_string(opts.alphabet_cap));
  }
  auto id_of = [&](LabelSet s) {
    return static_cast<Label>(std::lower_bound(dict.begin(), dict.end(), s) - dict.begin());
  };

  SpeedupResult result;
  result.origin = p;
  result.dictionary = dict;
  Problem& q = result.problem;
  for (LabelSet s : dict) q.alphabet.push_back(set_label_name(p, s));
  q.meta = "speedup(" + (p.meta.empty() ? std::string("problem") : p.meta) + ")";

  std::vector<Configuration> active;
  for (const auto& fam : families) {
    Word w;
    for (LabelSet s : fam) w.push_back(id_of(s));
    active.push_back(Configuration::from_word(make_word(std::move(w))));
  }
  q.active = Constraint(p.passive.degree(), std::move(active));

  std::vector<Label> ids;
  for (std::size_t i = 0; i < dict.size(); ++i) ids.push_back(static_cast<Label>(i));
  std::vector<Configuration> passive;
  std::vector<LabelSet> slots;
  for_each_multiset(ids, p.active.degree(), [&](const Word& w) {
    if (opts.stop.stop_requested()) throw Cancelled();
    slots.clear();
    for (Label l : w) slots.push_back(dict[l]);
    if (admits_choice(p.active, slots)) passive.push_back(Configuration::from_word(w));
  });
  q.passive = Constraint(p.active.degree(), std::move(passive));
  return result;
}

}  // namespace relim
