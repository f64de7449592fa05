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

// Oracles that share no code with the engine beyond the Problem type:
// labeling checks on finite graphs, exhaustive 0-round search, and
// exhaustive 1-round white algorithms on small trees.

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relim/problem.hpp"
#include "relim/sim/matching.hpp"
#include "relim/sim/port_graph.hpp"

namespace relim::sim {

struct NodeFailure {
  NodeRef node;
  std::vector<std::string> labels;
  std::string reason;
};

struct SolutionReport {
  bool ok = true;
  int white_checked = 0;
  int black_checked = 0;
  int white_failed = 0;
  int black_failed = 0;
  int skipped = 0;
  /// The first kMaxListedFailures failures; the counts are complete.
  std::vector<NodeFailure> failures;
  static constexpr std::size_t kMaxListedFailures = 64;
};

/// White nodes against the active side, black nodes against the passive
/// side. Boundary nodes are skipped.
inline SolutionReport check_solution(const Problem& p, const PortGraph& g, const EdgeLabeling& l) {
  if (static_cast<int>(l.size()) != g.num_edges()) {
    throw InvalidArgument("labeling has " + std::to_string(l.size()) + " entries for " +
                          std::to_string(g.num_edges()) + " edges");
  }
  for (Label x : l) {
    if (x >= p.alphabet_size()) throw InvalidArgument("label outside the alphabet");
  }
  SolutionReport r;
  auto node = [&](bool white, int v, int deg, const Constraint& c, auto edge_at) {
    if (white ? g.white_boundary[v] : g.black_boundary[v]) {
      ++r.skipped;
      return;
    }
    ++(white ? r.white_checked : r.black_checked);
    Word w;
    for (int port = 1; port <= deg; ++port) w.push_back(l[edge_at(v, port)]);
    std::string reason;
    if (deg != c.degree()) {
      reason = "degree " + std::to_string(deg) + ", constraint degree " + std::to_string(c.degree());
    } else if (!member(c, make_word(w))) {
      reason = "word not allowed";
    }
    if (reason.empty()) return;
    ++(white ? r.white_failed : r.black_failed);
    if (r.failures.size() < SolutionReport::kMaxListedFailures) {
      NodeFailure f{{white, v}, {}, reason};
      for (Label x : w) f.labels.push_back(p.alphabet[x]);
      r.failures.push_back(std::move(f));
    }
  };
  for (int w = 0; w < g.whites(); ++w) {
    node(true, w, g.white_degree(w), p.active,
         [&](int v, int port) { return g.white_edge(v, port); });
  }
  for (int b = 0; b < g.blacks(); ++b) {
    node(false, b, g.black_degree(b), p.passive,
         [&](int v, int port) { return g.black_edge(v, port); });
  }
  r.ok = r.white_failed == 0 && r.black_failed == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive oracles.

inline constexpr int kBruteForceMaxLabels = 4;
inline constexpr int kBruteForceMaxDegree = 5;

namespace detail {

/// Every sorted word allowed by `c`, by direct enumeration of slot choices.
inline std::set<Word> allowed_words(const Constraint& c) {
  std::set<Word> out;
  for (const Configuration& conf : c.configurations()) {
    std::vector<LabelSet> slots;
    for (const Group& g : conf.groups()) {
      for (int k = 0; k < g.exp; ++k) slots.push_back(g.members);
    }
    Word w(slots.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == slots.size()) {
        Word v = w;
        std::sort(v.begin(), v.end());
        out.insert(v);
        return;
      }
      slots[i].for_each([&](Label x) {
        w[i] = x;
        self(self, i + 1);
      });
    };
    rec(rec, 0);
  }
  return out;
}

/// Sorted words of length `len` over `labels`.
inline std::vector<Word> sorted_words(const std::vector<Label>& labels, int len) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(w.size()) == len) {
      out.push_back(w);
      return;
    }
    for (std::size_t i = from; i < labels.size(); ++i) {
      w.push_back(labels[i]);
      self(self, i);
      w.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline void check_brute_force_range(const Problem& p) {
  if (p.alphabet_size() > kBruteForceMaxLabels || p.active.degree() > kBruteForceMaxDegree ||
      p.passive.degree() > kBruteForceMaxDegree) {
    throw InvalidArgument("outside the exhaustive range (at most 4 labels, degree at most 5)");
  }
}

}  // namespace detail

/// Is there one active word that every adversarial passive multiset over its
/// labels accepts?
inline bool brute_force_zero_round(const Problem& p) {
  detail::check_brute_force_range(p);
  const auto active = detail::allowed_words(p.active);
  const auto passive = detail::allowed_words(p.passive);
  std::vector<Label> all;
  for (int i = 0; i < p.alphabet_size(); ++i) all.push_back(static_cast<Label>(i));
  for (const Word& w : detail::sorted_words(all, p.active.degree())) {
    if (!active.count(w)) continue;
    std::vector<Label> support(w.begin(), w.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    bool good = true;
    for (const Word& m : detail::sorted_words(support, p.passive.degree())) {
      if (!passive.count(m)) {
        good = false;
        break;
      }
    }
    if (good) return true;
  }
  return false;
}

/// What a white node sees after one round: for each of its ports, the port
/// number the black neighbour uses for the connecting edge.
using WhiteView = std::vector<int>;

/// The views a 1-round white algorithm is required to handle. On the
/// infinite bipartite (dw, db)-biregular tree every view occurs and the
/// neighbours of a black node see independent views, so the full catalog
/// is exact there.
struct TemplateCatalog {
  int white_degree = 0;
  int black_degree = 0;
  std::vector<WhiteView> views;

  static TemplateCatalog full(int dw, int db) {
    TemplateCatalog c{dw, db, {}};
    WhiteView v(dw, 1);
    while (true) {
      c.views.push_back(v);
      int i = dw - 1;
      while (i >= 0 && v[i] == db) v[i--] = 1;
      if (i < 0) break;
      ++v[i];
    }
    return c;
  }
};

struct OneRoundAlgorithm {
  TemplateCatalog catalog;
  /// Labels per port, for each view of the catalog.
  std::vector<std::vector<Label>> outputs;
};

inline constexpr int kOneRoundMaxLabels = 3;
inline constexpr int kOneRoundMaxDegree = 2;

/// Exhaustive search for a 1-round white algorithm on the views of
/// `catalog`. A black node with ports 1..db is adjacent, on port j, to a
/// white node using some port q whose view has entry j at q; every such
/// combination must produce a passive word.
inline std::optional<OneRoundAlgorithm> one_round_white_solvable(const Problem& p,
                                                                 const TemplateCatalog& catalog) {
  const int dw = p.active.degree();
  const int db = p.passive.degree();
  if (p.alphabet_size() > kOneRoundMaxLabels || dw > kOneRoundMaxDegree ||
      db > kOneRoundMaxDegree) {
    throw InvalidArgument("outside the 1-round range (at most 3 labels, degree at most 2)");
  }
  if (catalog.white_degree != dw || catalog.black_degree != db) {
    throw InvalidArgument("catalog degrees do not match the problem");
  }
  const auto active = detail::allowed_words(p.active);
  const auto passive = detail::allowed_words(p.passive);
  const int nv = static_cast<int>(catalog.views.size());

  // Port-ordered outputs allowed at a white node.
  std::vector<std::vector<Label>> choices;
  {
    std::vector<Label> seq(dw, 0);
    const auto n = static_cast<Label>(p.alphabet_size());
    while (true) {
      if (active.count(make_word(seq))) choices.push_back(seq);
      int i = dw - 1;
      while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
      if (i < 0) break;
      ++seq[i];
    }
  }

  // Neighbour slots of a black node: (view index, white port) pairs per
  // black port.
  std::vector<std::vector<std::pair<int, int>>> slot(db);
  for (int j = 1; j <= db; ++j) {
    for (int v = 0; v < nv; ++v) {
      for (int q = 0; q < dw; ++q) {
        if (catalog.views[v][q] == j) slot[j - 1].emplace_back(v, q);
      }
    }
  }

  std::vector<int> pick(nv, -1);
  // All black neighbourhoods whose views are assigned, with the largest
  // view index equal to `last`, are accepted.
  auto consistent = [&](int last) {
    std::vector<Label> w(db);
    auto rec = [&](auto&& self, int j, bool uses_last) -> bool {
      if (j == db) {
        return !uses_last || passive.count(make_word(w)) > 0;
      }
      for (auto [v, q] : slot[j]) {
        if (v > last) continue;
        w[j] = choices[pick[v]][q];
        if (!self(self, j + 1, uses_last || v == last)) return false;
      }
      return true;
    };
    return rec(rec, 0, false);
  };
  auto search = [&](auto&& self, int v) -> bool {
    if (v == nv) return true;
    for (int c = 0; c < static_cast<int>(choices.size()); ++c) {
      pick[v] = c;
      if (consistent(v) && self(self, v + 1)) return true;
    }
    pick[v] = -1;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  OneRoundAlgorithm alg{catalog, {}};
  for (int v = 0; v < nv; ++v) alg.outputs.push_back(choices[pick[v]]);
  return alg;
}

inline std::optional<OneRoundAlgorithm> one_round_white_solvable(const Problem& p) {
  return one_round_white_solvable(
      p, TemplateCatalog::full(p.active.degree(), p.passive.degree()));
}

}  // namespace relim::sim
