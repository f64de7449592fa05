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

// Label identification, clean-up of useless labels, and renaming equivalence.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "relim/problem.hpp"
#include "relim/relaxation.hpp"

namespace relim {

/// Rewrites `p` through the total map `f` onto the alphabet `names`.
inline Problem merge_labels(const Problem& p, const std::vector<Label>& f,
                            std::vector<std::string> names) {
  if (f.size() != p.alphabet.size()) {
    throw InvalidLabelMap("merge map covers " + std::to_string(f.size()) + " of " +
                          std::to_string(p.alphabet.size()) + " labels");
  }
  for (Label t : f) {
    if (t >= names.size()) throw InvalidLabelMap("merge map image out of range");
  }
  const LabelMap m = LabelMap::total(f);
  auto rewrite = [&](const Constraint& c) {
    std::vector<Configuration> out;
    for (const Configuration& conf : c.configurations()) out.push_back(*map_configuration(conf, m));
    return Constraint(c.degree(), std::move(out));
  };
  Problem q;
  q.alphabet = std::move(names);
  q.active = rewrite(p.active);
  q.passive = rewrite(p.passive);
  q.meta = p.meta;
  return q;
}

/// Merges each group of names into one label. Merged single-character names
/// are concatenated ("1", "2" -> "12"), longer ones joined with '+'.
/// The merged label takes the position of its lowest member.
inline std::pair<Problem, std::vector<Label>> identify_labels(
    const Problem& p, const std::vector<std::vector<std::string>>& groups) {
  const int n = p.alphabet_size();
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = i;
  std::vector<char> seen(n, 0);
  for (const auto& g : groups) {
    if (g.empty()) throw InvalidLabelMap("empty merge group");
    int root = n;
    for (const auto& name : g) root = std::min<int>(root, p.label(name));
    for (const auto& name : g) {
      const Label l = p.label(name);
      if (seen[l]) throw InvalidLabelMap("label '" + name + "' appears in two merge groups");
      seen[l] = 1;
      cls[l] = root;
    }
  }
  std::vector<Label> f(n);
  std::vector<std::string> names;
  std::vector<int> root_of;
  for (int i = 0; i < n; ++i) {
    if (cls[i] != i) continue;
    std::vector<int> members;
    for (int j = 0; j < n; ++j) {
      if (cls[j] == i) members.push_back(j);
    }
    bool short_names = true;
    for (int j : members) short_names = short_names && p.alphabet[j].size() == 1;
    std::string name;
    for (int j : members) {
      if (!name.empty() && !short_names) name += '+';
      name += p.alphabet[j];
    }
    root_of.push_back(i);
    names.push_back(std::move(name));
  }
  for (int i = 0; i < n; ++i) {
    f[i] = static_cast<Label>(std::find(root_of.begin(), root_of.end(), cls[i]) - root_of.begin());
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw InvalidLabelMap("merged name '" + names[i] + "' clashes");
    }
  }
  Problem q = merge_labels(p, f, std::move(names));
  return {std::move(q), std::move(f)};
}

struct SimplifyResult {
  Problem problem;
  /// Old label -> new label, empty for dropped labels.
  LabelMap map;
};

/// Drops labels no word of one side can use, because no word of the other
/// side accepts them, and compacts the alphabet. Iterates to a fixpoint.
inline SimplifyResult simplify(const Problem& p) {
  Constraint active = p.active;
  Constraint passive = p.passive;
  auto restrict_to = [](const Constraint& c, LabelSet keep) {
    std::vector<Configuration> out;
    for (const Configuration& conf : c.configurations()) {
      std::vector<Group> gs;
      bool ok = true;
      for (const Group& g : conf.groups()) {
        LabelSet m = g.members & keep;
        if (m.empty()) {
          ok = false;
          break;
        }
        gs.push_back({m, g.exp});
      }
      if (ok) out.emplace_back(std::move(gs));
    }
    return Constraint(c.degree(), std::move(out));
  };
  for (;;) {
    const LabelSet keep = active.labels() & passive.labels();
    if (keep == active.labels() && keep == passive.labels()) break;
    active = restrict_to(active, keep);
    passive = restrict_to(passive, keep);
  }
  const LabelSet used = active.labels();
  SimplifyResult r;
  std::vector<Label> f(p.alphabet.size(), 0);
  for (int i = 0; i < p.alphabet_size(); ++i) {
    if (used.contains(static_cast<Label>(i))) {
      r.map.image.emplace_back(static_cast<Label>(r.problem.alphabet.size()));
      f[i] = static_cast<Label>(r.problem.alphabet.size());
      r.problem.alphabet.push_back(p.alphabet[i]);
    } else {
      r.map.image.emplace_back();
    }
  }
  auto compact = [&](const Constraint& c) {
    std::vector<Configuration> out;
    for (const Configuration& conf : c.configurations()) out.push_back(*map_configuration(conf, r.map));
    return Constraint(c.degree(), std::move(out));
  };
  r.problem.active = compact(active);
  r.problem.passive = compact(passive);
  r.problem.meta = p.meta;
  return r;
}

enum class EquivalenceMode { kExhaustive, kHeuristic };

inline constexpr int kExhaustiveEquivalenceLimit = 8;

namespace detail {

/// Renaming-invariant fingerprint of one label.
inline std::vector<int> label_signature(const Problem& p, Label l) {
  std::vector<int> sig;
  for (Side s : {Side::kActive, Side::kPassive}) {
    std::vector<int> part;
    for (const Configuration& c : p.side(s).configurations()) {
      int in = 0;
      int alone = 0;
      for (const Group& g : c.groups()) {
        if (!g.members.contains(l)) continue;
        in += g.exp;
        if (g.members.size() == 1) alone += g.exp;
      }
      if (in > 0) part.push_back(in * 64 + alone);
    }
    std::sort(part.begin(), part.end());
    sig.push_back(-1);
    sig.insert(sig.end(), part.begin(), part.end());
  }
  return sig;
}

}  // namespace detail

/// A bijection g (a-label -> b-label) with merge_labels(a, g, b.alphabet)
/// equal to b, if one exists.
inline std::optional<std::vector<Label>> equivalent(const Problem& a, const Problem& b,
                                                    EquivalenceMode mode = EquivalenceMode::kExhaustive,
                                                    std::uint64_t budget = 10'000'000) {
  const int n = a.alphabet_size();
  if (n != b.alphabet_size() || a.active.degree() != b.active.degree() ||
      a.passive.degree() != b.passive.degree() || a.active.size() != b.active.size() ||
      a.passive.size() != b.passive.size()) {
    return std::nullopt;
  }
  if (mode == EquivalenceMode::kExhaustive && n > kExhaustiveEquivalenceLimit) {
    throw InvalidArgument("exhaustive equivalence refused above " +
                          std::to_string(kExhaustiveEquivalenceLimit) + " labels");
  }
  std::vector<std::vector<int>> sa(n), sb(n);
  for (int i = 0; i < n; ++i) {
    sa[i] = detail::label_signature(a, static_cast<Label>(i));
    sb[i] = detail::label_signature(b, static_cast<Label>(i));
  }
  std::vector<Label> g(n);
  std::vector<char> used(n, 0);
  std::uint64_t visited = 0;
  std::optional<std::vector<Label>> found;
  auto rec = [&](auto&& self, int i) -> void {
    if (found) return;
    if (mode == EquivalenceMode::kHeuristic && ++visited > budget) {
      throw BudgetExceeded("equivalence search budget exhausted");
    }
    if (i == n) {
      Problem m = merge_labels(a, g, b.alphabet);
      if (m.active == b.active && m.passive == b.passive) found = g;
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || sa[i] != sb[j]) continue;
      used[j] = 1;
      g[i] = static_cast<Label>(j);
      self(self, i + 1);
      used[j] = 0;
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace relim
