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

// Bipartite edge-labeling problems: an alphabet plus one constraint per side.
// A constraint is a set of condensed configurations such as M [PO]^2, each
// standing for every multiset obtained by picking one member per group slot.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relim/error.hpp"
#include "relim/label_set.hpp"

namespace relim {

enum class Side { kActive, kPassive };

inline Side other(Side s) { return s == Side::kActive ? Side::kPassive : Side::kActive; }

inline Word make_word(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  return labels;
}

struct Group {
  LabelSet members;
  int exp = 1;

  auto operator<=>(const Group&) const = default;
};

/// A condensed multiset word. Groups are kept sorted by member set, with
/// equal member sets merged.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(std::vector<Group> groups) {
    for (const Group& g : groups) {
      if (g.members.empty()) throw InvalidArgument("configuration group has no members");
      if (g.exp < 1) throw InvalidArgument("configuration group exponent must be >= 1");
    }
    std::sort(groups.begin(), groups.end());
    for (const Group& g : groups) {
      if (!groups_.empty() && groups_.back().members == g.members) {
        groups_.back().exp += g.exp;
      } else {
        groups_.push_back(g);
      }
    }
  }

  static Configuration from_word(const Word& w) {
    std::vector<Group> gs;
    gs.reserve(w.size());
    for (Label l : w) gs.push_back({LabelSet::single(l), 1});
    return Configuration(std::move(gs));
  }

  const std::vector<Group>& groups() const { return groups_; }

  int degree() const {
    int d = 0;
    for (const Group& g : groups_) d += g.exp;
    return d;
  }

  bool is_plain() const {
    return std::all_of(groups_.begin(), groups_.end(),
                       [](const Group& g) { return g.members.size() == 1; });
  }

  LabelSet labels() const {
    LabelSet s;
    for (const Group& g : groups_) s |= g.members;
    return s;
  }

  /// The single word of a plain configuration.
  Word as_word() const {
    Word w;
    for (const Group& g : groups_) w.insert(w.end(), g.exp, g.members.lowest());
    return w;
  }

  auto operator<=>(const Configuration&) const = default;

 private:
  std::vector<Group> groups_;
};

/// Demand of `count` slots that may each be served by any label of `set`.
struct SlotDemand {
  LabelSet set;
  int count = 1;
};

inline std::vector<SlotDemand> demand_of(const Word& w) {
  std::vector<SlotDemand> out;
  for (Label l : w) {
    if (!out.empty() && out.back().set == LabelSet::single(l)) {
      ++out.back().count;
    } else {
      out.push_back({LabelSet::single(l), 1});
    }
  }
  return out;
}

/// Assigns every slot to a group of `c` whose members intersect the slot's
/// set, respecting group exponents as capacities. Returns the group index per
/// slot, or nothing if no such assignment exists.
inline std::optional<std::vector<std::size_t>> assign_slots(std::span<const LabelSet> slots,
                                                            const Configuration& c) {
  const auto& gs = c.groups();
  std::vector<std::vector<std::size_t>> holders(gs.size());
  std::vector<std::size_t> where(slots.size(), gs.size());

  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t slot) -> bool {
    for (std::size_t g = 0; g < gs.size(); ++g) {
      if (seen[g] || !gs[g].members.intersects(slots[slot])) continue;
      seen[g] = 1;
      if (holders[g].size() < static_cast<std::size_t>(gs[g].exp)) {
        holders[g].push_back(slot);
        where[slot] = g;
        return true;
      }
      for (std::size_t& other : holders[g]) {
        if (self(self, other)) {
          other = slot;
          where[slot] = g;
          return true;
        }
      }
    }
    return false;
  };
  for (std::size_t s = 0; s < slots.size(); ++s) {
    seen.assign(gs.size(), 0);
    if (!augment(augment, s)) return std::nullopt;
  }
  return where;
}

/// Transport feasibility via Hall's condition: every demand can be placed in
/// groups it intersects without exceeding exponents. Slots left free are
/// allowed, so this also answers "is a sub-multiset of".
inline bool hall_fit(std::span<const SlotDemand> demand, const Configuration& c) {
  int total = 0;
  for (const SlotDemand& d : demand) total += d.count;
  if (total > c.degree()) return false;
  const std::size_t k = demand.size();
  if (k > 12) {
    std::vector<LabelSet> slots;
    for (const SlotDemand& d : demand) slots.insert(slots.end(), d.count, d.set);
    return assign_slots(slots, c).has_value();
  }
  const auto& gs = c.groups();
  for (std::uint32_t s = 1; s < (1u << k); ++s) {
    LabelSet uni;
    int need = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((s >> i) & 1u) {
        uni |= demand[i].set;
        need += demand[i].count;
      }
    }
    int cap = 0;
    for (const Group& g : gs) {
      if (g.members.intersects(uni)) cap += g.exp;
    }
    if (need > cap) return false;
  }
  return true;
}

inline bool member(const Configuration& c, const Word& w) {
  if (static_cast<int>(w.size()) != c.degree()) return false;
  if (!LabelSet(std::accumulate(w.begin(), w.end(), 0u,
                                [](std::uint32_t b, Label l) { return b | (1u << l); }))
           .subset_of(c.labels())) {
    return false;
  }
  const auto d = demand_of(w);
  return hall_fit(d, c);
}

/// Enumerates every sorted multiset of `size` labels drawn from `labels`
/// (which must be sorted ascending), in lexicographic order.
template <typename F>
void for_each_multiset(const std::vector<Label>& labels, int size, F&& f) {
  Word w(static_cast<std::size_t>(size));
  if (size == 0) {
    f(static_cast<const Word&>(w));
    return;
  }
  if (labels.empty()) return;
  auto rec = [&](auto&& self, int pos, std::size_t from) -> void {
    if (pos == size) {
      f(static_cast<const Word&>(w));
      return;
    }
    for (std::size_t i = from; i < labels.size(); ++i) {
      w[pos] = labels[i];
      self(self, pos + 1, i);
    }
  };
  rec(rec, 0, 0);
}

inline constexpr std::size_t kDefaultExpansionLimit = 5'000'000;

/// All plain multisets of one configuration, sorted and de-duplicated.
inline std::vector<Word> expand(const Configuration& c,
                                std::size_t limit = kDefaultExpansionLimit) {
  std::vector<std::vector<Word>> parts;
  for (const Group& g : c.groups()) {
    std::vector<Word> opts;
    for_each_multiset(g.members.labels(), g.exp, [&](const Word& w) { opts.push_back(w); });
    parts.push_back(std::move(opts));
  }
  std::vector<Word> out;
  Word cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == parts.size()) {
      if (out.size() >= limit) throw BudgetExceeded("configuration expansion exceeds limit");
      out.push_back(make_word(cur));
      return;
    }
    for (const Word& piece : parts[i]) {
      const std::size_t mark = cur.size();
      cur.insert(cur.end(), piece.begin(), piece.end());
      self(self, i + 1);
      cur.resize(mark);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Set of configurations over one node side, all of total exponent `degree`.
/// Canonical: sorted, and no configuration is semantically contained in
/// another one.
class Constraint {
 public:
  Constraint() = default;

  Constraint(int degree, std::vector<Configuration> configs) : degree_(degree) {
    if (degree < 1) throw InvalidArgument("constraint degree must be >= 1");
    for (const Configuration& c : configs) {
      if (c.degree() != degree) {
        throw DegreeMismatch("configuration has total exponent " + std::to_string(c.degree()) +
                             ", expected " + std::to_string(degree));
      }
    }
    configs_ = canonicalize(std::move(configs));
  }

  int degree() const { return degree_; }
  const std::vector<Configuration>& configurations() const { return configs_; }
  std::size_t size() const { return configs_.size(); }
  bool empty() const { return configs_.empty(); }

  LabelSet labels() const {
    LabelSet s;
    for (const Configuration& c : configs_) s |= c.labels();
    return s;
  }

  bool operator==(const Constraint&) const = default;

 private:
  static std::vector<Configuration> canonicalize(std::vector<Configuration> configs);

  int degree_ = 1;
  std::vector<Configuration> configs_;
};

inline bool member(const Constraint& c, const Word& w) {
  if (static_cast<int>(w.size()) != c.degree()) {
    throw DegreeMismatch("word of length " + std::to_string(w.size()) +
                         " tested against constraint of degree " + std::to_string(c.degree()));
  }
  for (const Configuration& conf : c.configurations()) {
    if (member(conf, w)) return true;
  }
  return false;
}

/// True iff `partial` is a sub-multiset of some word of the constraint.
inline bool extends_to(const Constraint& c, const Word& partial) {
  const auto d = demand_of(partial);
  for (const Configuration& conf : c.configurations()) {
    if (hall_fit(d, conf)) return true;
  }
  return false;
}

/// Existential test: picking one label per slot can produce some word of the
/// constraint.
inline bool admits_choice(const Constraint& c, std::span<const LabelSet> slots) {
  if (static_cast<int>(slots.size()) != c.degree()) return false;
  std::vector<SlotDemand> d;
  std::vector<LabelSet> sorted(slots.begin(), slots.end());
  std::sort(sorted.begin(), sorted.end());
  for (LabelSet s : sorted) {
    if (!d.empty() && d.back().set == s) {
      ++d.back().count;
    } else {
      d.push_back({s, 1});
    }
  }
  for (const Configuration& conf : c.configurations()) {
    if (hall_fit(d, conf)) return true;
  }
  return false;
}

inline std::vector<Word> expand(const Constraint& c, std::size_t limit = kDefaultExpansionLimit) {
  std::vector<Word> out;
  for (const Configuration& conf : c.configurations()) {
    auto part = expand(conf, limit);
    out.insert(out.end(), part.begin(), part.end());
    if (out.size() > limit) throw BudgetExceeded("constraint expansion exceeds limit");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Every word of `a` is a word of `b`.
inline bool contained(const Configuration& a, const Configuration& b) {
  if (a.degree() != b.degree()) return false;
  if (b.is_plain()) return a == b;
  if (a.is_plain()) return member(b, a.as_word());
  if (!a.labels().subset_of(b.labels())) return false;
  for (const Word& w : expand(a)) {
    if (!member(b, w)) return false;
  }
  return true;
}

/// Every word of `a` is a word of some configuration of `b`.
inline bool contained(const Configuration& a, const Constraint& b) {
  if (a.degree() != b.degree()) return false;
  if (a.is_plain()) return member(b, a.as_word());
  for (const Configuration& c : b.configurations()) {
    if (contained(a, c)) return true;
  }
  for (const Word& w : expand(a)) {
    if (!member(b, w)) return false;
  }
  return true;
}

inline std::vector<Configuration> Constraint::canonicalize(std::vector<Configuration> configs) {
  std::sort(configs.begin(), configs.end());
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  std::vector<std::size_t> condensed;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!configs[i].is_plain()) condensed.push_back(i);
  }
  if (condensed.empty()) return configs;

  std::vector<char> drop(configs.size(), 0);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t j : condensed) {
      if (i == j || drop[j]) continue;
      if (!contained(configs[i], configs[j])) continue;
      // Equal semantics: keep the lexicographically smaller form.
      if (!configs[i].is_plain() && contained(configs[j], configs[i]) && i < j) continue;
      drop[i] = 1;
      break;
    }
  }
  std::vector<Configuration> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(configs[i]));
  }
  return out;
}

/// An edge-labeling problem. The active side outputs labels; the passive
/// side only checks them.
struct Problem {
  std::vector<std::string> alphabet;
  Constraint active;
  Constraint passive;
  std::string meta;

  int alphabet_size() const { return static_cast<int>(alphabet.size()); }

  const Constraint& side(Side s) const { return s == Side::kActive ? active : passive; }

  std::optional<Label> find(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (alphabet[i] == name) return static_cast<Label>(i);
    }
    return std::nullopt;
  }

  Label label(std::string_view name) const {
    if (auto l = find(name)) return *l;
    throw UnknownLabel("unknown label '" + std::string(name) + "'");
  }

  Word word(std::initializer_list<std::string_view> names) const {
    Word w;
    for (auto n : names) w.push_back(label(n));
    return make_word(std::move(w));
  }

  /// Same alphabet and constraints; provenance is ignored.
  bool same_as(const Problem& o) const {
    return alphabet == o.alphabet && active == o.active && passive == o.passive;
  }
};

inline bool valid_label_name(std::string_view name) {
  if (name.empty()) return false;
  for (char ch : name) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '[' || ch == ']' ||
        ch == '|' || ch == '^' || ch == ':') {
      return false;
    }
  }
  return true;
}

/// Checks the structural invariants of a problem; throws on violation.
inline void validate(const Problem& p, int alphabet_cap = kMaxAlphabetCap) {
  if (p.alphabet_size() > alphabet_cap) {
    throw AlphabetCapExceeded("alphabet of " + std::to_string(p.alphabet_size()) +
                              " labels exceeds cap " + std::to_string(alphabet_cap));
  }
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    if (!valid_label_name(p.alphabet[i])) {
      throw InvalidArgument("invalid label name '" + p.alphabet[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (p.alphabet[i] == p.alphabet[j]) {
        throw InvalidArgument("duplicate label name '" + p.alphabet[i] + "'");
      }
    }
  }
  const LabelSet all = LabelSet::first(p.alphabet_size());
  if (!p.active.labels().subset_of(all) || !p.passive.labels().subset_of(all)) {
    throw UnknownLabel("constraint references a label outside the alphabet");
  }
}

}  // namespace relim
