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

// Zero-round reductions between problems.
//
// A relaxation from `from` to `to` lets every active node first replace each
// of its labels by a label at least as strong in the passive strength order
// of `from` (this never breaks a passive node of `from`), and then rename
// through a label map. Labels the map leaves undefined are eliminated: the
// active side must upgrade them away, and passive words mentioning them never
// occur.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relim/parse.hpp"
#include "relim/problem.hpp"
#include "relim/strength_order.hpp"

namespace relim {

struct LabelMap {
  /// Image per source label; empty means the label is eliminated.
  std::vector<std::optional<Label>> image;

  static LabelMap identity(int n) {
    LabelMap m;
    for (int i = 0; i < n; ++i) m.image.emplace_back(static_cast<Label>(i));
    return m;
  }

  static LabelMap total(const std::vector<Label>& targets) {
    LabelMap m;
    for (Label t : targets) m.image.emplace_back(t);
    return m;
  }

  /// Maps every label of `from` to the label of `to` with the same name.
  static LabelMap by_name(const Problem& from, const Problem& to) {
    LabelMap m;
    for (const auto& n : from.alphabet) {
      auto t = to.find(n);
      if (!t) throw InvalidLabelMap("label '" + n + "' has no counterpart in target");
      m.image.emplace_back(*t);
    }
    return m;
  }

  bool is_total() const {
    for (const auto& i : image) {
      if (!i) return false;
    }
    return true;
  }

  int eliminated() const {
    int n = 0;
    for (const auto& i : image) n += i ? 0 : 1;
    return n;
  }

  LabelSet domain() const {
    LabelSet s;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (image[i]) s.insert(static_cast<Label>(i));
    }
    return s;
  }

  LabelSet apply(LabelSet s) const {
    LabelSet out;
    s.for_each([&](Label l) {
      if (image[l]) out.insert(*image[l]);
    });
    return out;
  }

  /// `second` after `*this`.
  LabelMap then(const LabelMap& second) const {
    LabelMap m;
    for (const auto& i : image) {
      if (i && *i < second.image.size()) {
        m.image.push_back(second.image[*i]);
      } else {
        m.image.emplace_back();
      }
    }
    return m;
  }

  bool operator==(const LabelMap&) const = default;
};

enum class RelaxMode { kMapOnly, kWithUpgrades };

/// How one active word of the source is carried into the target.
struct ActiveStep {
  std::size_t config = 0;
  Word word;
  Word upgraded;
  Word image;
};

struct RelaxationReport {
  bool ok = false;
  std::vector<ActiveStep> active_steps;
  std::size_t passive_configs_checked = 0;
  std::string failure;
};

/// Image of a configuration restricted to the map's domain; empty when some
/// group has no mapped member.
inline std::optional<Configuration> map_configuration(const Configuration& c, const LabelMap& f) {
  std::vector<Group> gs;
  for (const Group& g : c.groups()) {
    LabelSet img = f.apply(g.members);
    if (img.empty()) return std::nullopt;
    gs.push_back({img, g.exp});
  }
  return Configuration(std::move(gs));
}

inline void check_map_shape(const Problem& from, const Problem& to, const LabelMap& f) {
  if (f.image.size() != from.alphabet.size()) {
    throw InvalidLabelMap("label map covers " + std::to_string(f.image.size()) + " of " +
                          std::to_string(from.alphabet.size()) + " source labels");
  }
  for (const auto& i : f.image) {
    if (i && *i >= to.alphabet.size()) throw InvalidLabelMap("label map image out of range");
  }
}

/// Every word of `from` (restricted to the map's domain) maps into `to`.
inline bool constraint_relaxes(const Constraint& from, const Constraint& to, const LabelMap& f,
                               std::string* failure = nullptr) {
  if (from.degree() != to.degree()) {
    throw DegreeMismatch("constraint degrees differ: " + std::to_string(from.degree()) + " vs " +
                         std::to_string(to.degree()));
  }
  for (const Configuration& c : from.configurations()) {
    auto img = map_configuration(c, f);
    if (!img) continue;
    if (contained(*img, to)) continue;
    if (failure) {
      for (const Word& w : expand(*img)) {
        if (!member(to, w)) {
          *failure = "word outside target";
          break;
        }
      }
    }
    return false;
  }
  return true;
}

inline RelaxationReport relaxation_check(const Problem& from, const Problem& to, const LabelMap& f,
                                         RelaxMode mode = RelaxMode::kWithUpgrades) {
  check_map_shape(from, to, f);
  if (from.active.degree() != to.active.degree() ||
      from.passive.degree() != to.passive.degree()) {
    throw DegreeMismatch("relaxation between problems with different degrees");
  }
  RelaxationReport report;
  const LabelSet dom = f.domain();
  std::vector<LabelSet> candidates(from.alphabet.size());
  if (mode == RelaxMode::kWithUpgrades) {
    const LabelPoset poset = strength_order(from, Side::kPassive);
    for (int l = 0; l < from.alphabet_size(); ++l) {
      candidates[l] = poset.up_set(static_cast<Label>(l)) & dom;
    }
  } else {
    for (int l = 0; l < from.alphabet_size(); ++l) {
      candidates[l] = LabelSet::single(static_cast<Label>(l)) & dom;
    }
  }

  const auto& confs = from.active.configurations();
  for (std::size_t ci = 0; ci < confs.size(); ++ci) {
    for (const Word& w : expand(confs[ci])) {
      std::vector<LabelSet> slots;
      for (Label l : w) slots.push_back(f.apply(candidates[l]));
      bool placed = false;
      for (const Configuration& target : to.active.configurations()) {
        auto where = assign_slots(slots, target);
        if (!where) continue;
        ActiveStep step{ci, w, {}, {}};
        for (std::size_t i = 0; i < w.size(); ++i) {
          const Label t = (slots[i] & target.groups()[(*where)[i]].members).lowest();
          std::optional<Label> src;
          if (dom.contains(w[i]) && *f.image[w[i]] == t) src = w[i];
          candidates[w[i]].for_each([&](Label c) {
            if (!src && *f.image[c] == t) src = c;
          });
          step.upgraded.push_back(*src);
          step.image.push_back(t);
        }
        report.active_steps.push_back(std::move(step));
        placed = true;
        break;
      }
      if (!placed) {
        report.failure = "active word " + format_word(from, w) + " has no image in target";
        return report;
      }
    }
  }

  for (const Configuration& c : from.passive.configurations()) {
    ++report.passive_configs_checked;
    auto img = map_configuration(c, f);
    if (!img || contained(*img, to.passive)) continue;
    for (const Word& w : expand(*img)) {
      if (!member(to.passive, w)) {
        report.failure = "passive configuration " + format_configuration(from, c) +
                         " maps to " + format_word(to, w) + " outside target";
        return report;
      }
    }
  }
  report.ok = true;
  return report;
}

}  // namespace relim
