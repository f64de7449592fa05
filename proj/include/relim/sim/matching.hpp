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

// Matchings on port graphs: the proposal algorithm, k-matchings, and the
// labelings that encode them.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "relim/mm_family.hpp"
#include "relim/sim/port_graph.hpp"

namespace relim::sim {

/// Local view of a matching: the port each node is matched through.
struct MatchingState {
  std::vector<std::optional<int>> white_port;
  std::vector<std::optional<int>> black_port;

  MatchingState() = default;
  explicit MatchingState(const PortGraph& g) : white_port(g.whites()), black_port(g.blacks()) {}

  /// Sorted edge ids of the matching.
  std::vector<int> edges(const PortGraph& g) const {
    std::vector<int> out;
    for (int w = 0; w < g.whites(); ++w) {
      if (white_port[w]) out.push_back(g.white_edge(w, *white_port[w]));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Both endpoints of every matched edge agree on it.
  bool symmetric(const PortGraph& g) const {
    int matched_whites = 0;
    for (int w = 0; w < g.whites(); ++w) {
      if (!white_port[w]) continue;
      ++matched_whites;
      const Edge& e = g.edge(g.white_edge(w, *white_port[w]));
      if (black_port[e.black] != e.black_port) return false;
    }
    int matched_blacks = 0;
    for (int b = 0; b < g.blacks(); ++b) matched_blacks += black_port[b].has_value();
    return matched_whites == matched_blacks;
  }
};

inline MatchingState matching_from_edges(const PortGraph& g, const std::vector<int>& edges) {
  MatchingState m(g);
  for (int id : edges) {
    if (id < 0 || id >= g.num_edges()) throw InvalidArgument("edge id out of range");
    const Edge& e = g.edge(id);
    if (m.white_port[e.white] || m.black_port[e.black]) {
      throw InvalidArgument("edge set is not a matching");
    }
    m.white_port[e.white] = e.white_port;
    m.black_port[e.black] = e.black_port;
  }
  return m;
}

struct ProposalRun {
  MatchingState matching;
  /// Proposal iterations in which at least one proposal was sent.
  int iterations = 0;
  /// Rounds if an iteration costs one round (proposal and reply together).
  int rounds_single() const { return iterations; }
  /// Rounds if proposal and accept are separate communication rounds.
  int rounds_double() const { return 2 * iterations; }
};

/// In iteration i every unmatched white node proposes on its port i; an
/// unmatched black node accepts the proposal on its smallest port. All
/// proposals of an iteration arrive before any accept.
inline ProposalRun run_proposal(const PortGraph& g) {
  ProposalRun run;
  run.matching = MatchingState(g);
  MatchingState& m = run.matching;
  const int delta = g.max_white_degree();
  for (int i = 1; i <= delta; ++i) {
    std::vector<std::optional<int>> best(g.blacks());
    bool sent = false;
    for (int w = 0; w < g.whites(); ++w) {
      if (m.white_port[w] || g.white_degree(w) < i) continue;
      sent = true;
      const Edge& e = g.edge(g.white_edge(w, i));
      if (m.black_port[e.black]) continue;
      if (!best[e.black] || e.black_port < *best[e.black]) best[e.black] = e.black_port;
    }
    if (!sent) break;
    run.iterations = i;
    for (int b = 0; b < g.blacks(); ++b) {
      if (!best[b]) continue;
      const Edge& e = g.edge(g.black_edge(b, *best[b]));
      m.black_port[b] = e.black_port;
      m.white_port[e.white] = e.white_port;
    }
  }
  return run;
}

/// An edge whose endpoints are both unmatched, if any.
inline std::optional<int> uncovered_edge(const PortGraph& g, const MatchingState& m) {
  for (int id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (!m.white_port[e.white] && !m.black_port[e.black]) return id;
  }
  return std::nullopt;
}

/// M on the matched edge and O elsewhere at matched white nodes, P at
/// unmatched ones. Labels index make_pi({D, 0, 0}).
inline EdgeLabeling mm_labeling(const PortGraph& g, const MatchingState& m) {
  if (!m.symmetric(g)) throw InvalidArgument("matching state is not symmetric");
  if (auto id = uncovered_edge(g, m)) {
    const Edge& e = g.edge(*id);
    throw InvalidArgument("matching is not maximal: white " + std::to_string(e.white) +
                          " and black " + std::to_string(e.black) + " are both unmatched");
  }
  constexpr Label M = 0, P = 1, O = 2;
  EdgeLabeling l(g.num_edges());
  for (int w = 0; w < g.whites(); ++w) {
    for (int port = 1; port <= g.white_degree(w); ++port) {
      const int id = g.white_edge(w, port);
      if (!m.white_port[w]) {
        l[id] = P;
      } else {
        l[id] = *m.white_port[w] == port ? M : O;
      }
    }
  }
  return l;
}

// ---------------------------------------------------------------------------
// k-matchings.

struct NodeRef {
  bool white = true;
  int node = 0;
  bool operator==(const NodeRef&) const = default;
};

inline std::string to_string(const NodeRef& n) {
  return std::string(n.white ? "white " : "black ") + std::to_string(n.node);
}

struct KMatchingReport {
  bool ok = true;
  int k = 1;
  /// Nodes incident to more than k chosen edges.
  std::vector<NodeRef> over_k;
  /// Uncovered nodes with an uncovered neighbour.
  std::vector<NodeRef> exposed;
};

namespace detail {

inline std::vector<char> edge_mask(const PortGraph& g, const std::vector<int>& edges) {
  std::vector<char> in(g.num_edges(), 0);
  for (int id : edges) {
    if (id < 0 || id >= g.num_edges()) throw InvalidArgument("edge id out of range");
    if (in[id]) throw InvalidArgument("edge " + std::to_string(id) + " listed twice");
    in[id] = 1;
  }
  return in;
}

}  // namespace detail

/// Every node meets at most k chosen edges, and an uncovered node has only
/// covered neighbours. The second condition is not evaluated at boundary
/// nodes.
inline KMatchingReport k_matching_check(const PortGraph& g, const std::vector<int>& edges, int k) {
  if (k < 1) throw InvalidArgument("k must be positive");
  const auto in = detail::edge_mask(g, edges);
  std::vector<int> wc(g.whites(), 0), bc(g.blacks(), 0);
  for (int id = 0; id < g.num_edges(); ++id) {
    if (!in[id]) continue;
    ++wc[g.edge(id).white];
    ++bc[g.edge(id).black];
  }
  KMatchingReport r;
  r.k = k;
  for (int w = 0; w < g.whites(); ++w) {
    if (wc[w] > k) r.over_k.push_back({true, w});
  }
  for (int b = 0; b < g.blacks(); ++b) {
    if (bc[b] > k) r.over_k.push_back({false, b});
  }
  for (int w = 0; w < g.whites(); ++w) {
    if (wc[w] > 0 || g.white_boundary[w]) continue;
    for (int p = 1; p <= g.white_degree(w); ++p) {
      if (bc[g.edge(g.white_edge(w, p)).black] == 0) {
        r.exposed.push_back({true, w});
        break;
      }
    }
  }
  for (int b = 0; b < g.blacks(); ++b) {
    if (bc[b] > 0 || g.black_boundary[b]) continue;
    for (int p = 1; p <= g.black_degree(b); ++p) {
      if (wc[g.edge(g.black_edge(b, p)).white] == 0) {
        r.exposed.push_back({false, b});
        break;
      }
    }
  }
  r.ok = r.over_k.empty() && r.exposed.empty();
  return r;
}

/// Pi_D(k - 1, 0) with D the largest degree of `g`.
inline Problem k_matching_problem(const PortGraph& g, int k) {
  const int delta = std::max(g.max_white_degree(), g.max_black_degree());
  return make_pi({delta, k - 1, 0});
}

/// Labels a k-matching for k_matching_problem(g, k). A covered white node
/// puts M on its first chosen edge and X on the other chosen ones, then X on
/// its first unchosen edges until it has k - 1 X, and O on the rest. An
/// uncovered white node puts X on its first k - 1 ports and P on the rest.
inline EdgeLabeling k_matching_labeling(const PortGraph& g, const std::vector<int>& edges, int k) {
  const KMatchingReport r = k_matching_check(g, edges, k);
  if (!r.ok) {
    const NodeRef bad = r.over_k.empty() ? r.exposed.front() : r.over_k.front();
    throw InvalidArgument("edge set is not a " + std::to_string(k) + "-matching at " +
                          to_string(bad));
  }
  const Problem p = k_matching_problem(g, k);
  const Label M = p.label("M"), P = p.label("P"), O = p.label("O");
  const Label X = k > 1 ? p.label("X") : O;
  const auto in = detail::edge_mask(g, edges);
  EdgeLabeling l(g.num_edges());
  for (int w = 0; w < g.whites(); ++w) {
    const int deg = g.white_degree(w);
    int chosen = 0;
    for (int port = 1; port <= deg; ++port) chosen += in[g.white_edge(w, port)];
    if (chosen == 0) {
      for (int port = 1; port <= deg; ++port) l[g.white_edge(w, port)] = port < k ? X : P;
      continue;
    }
    int pad = k - chosen;
    bool first = true;
    for (int port = 1; port <= deg; ++port) {
      const int id = g.white_edge(w, port);
      if (in[id]) {
        l[id] = first ? M : X;
        first = false;
      } else if (pad > 0) {
        l[id] = X;
        --pad;
      } else {
        l[id] = O;
      }
    }
  }
  return l;
}

/// Edge ids of `g` selected by an independent set of its line graph.
inline std::vector<int> line_graph_mm(const PortGraph& g, const std::vector<int>& mis_on_line) {
  detail::edge_mask(g, mis_on_line);
  std::vector<int> by_white(g.whites(), -1), by_black(g.blacks(), -1);
  for (int id : mis_on_line) {
    const Edge& e = g.edge(id);
    for (auto [slot, what] : {std::pair{&by_white[e.white], "white"},
                              std::pair{&by_black[e.black], "black"}}) {
      if (*slot >= 0) {
        throw InvalidArgument("not independent in the line graph: edges " +
                              std::to_string(*slot) + " and " + std::to_string(id) +
                              " share a " + what + " node");
      }
      *slot = id;
    }
  }
  std::vector<int> out = mis_on_line;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace relim::sim
