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

// Finite two-coloured port-numbered graphs.
//
// JSON: {"white": n1, "black": n2, "edges": [[w, pw, b, pb], ...]} with node
// ids from 0 and ports from 1. Optional "boundary_white"/"boundary_black"
// list nodes whose neighbourhood is truncated.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relim/error.hpp"
#include "relim/json_io.hpp"

namespace relim::sim {

struct Edge {
  int white = 0;
  int white_port = 1;
  int black = 0;
  int black_port = 1;
  bool operator==(const Edge&) const = default;
};

class PortGraph {
 public:
  PortGraph() = default;
  PortGraph(int whites, int blacks, std::vector<Edge> edges)
      : whites_(whites), blacks_(blacks), edges_(std::move(edges)) {
    index();
  }

  int whites() const { return whites_; }
  int blacks() const { return blacks_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  int white_degree(int w) const { return static_cast<int>(white_ports_[w].size()); }
  int black_degree(int b) const { return static_cast<int>(black_ports_[b].size()); }
  /// Edge id behind port `p` (1-based).
  int white_edge(int w, int p) const { return white_ports_[w][p - 1]; }
  int black_edge(int b, int p) const { return black_ports_[b][p - 1]; }

  int max_white_degree() const {
    int d = 0;
    for (const auto& v : white_ports_) d = std::max(d, static_cast<int>(v.size()));
    return d;
  }
  int max_black_degree() const {
    int d = 0;
    for (const auto& v : black_ports_) d = std::max(d, static_cast<int>(v.size()));
    return d;
  }

  std::vector<char> white_boundary;
  std::vector<char> black_boundary;

 private:
  void index() {
    if (whites_ < 0 || blacks_ < 0) throw InvalidArgument("negative node count");
    white_ports_.assign(whites_, {});
    black_ports_.assign(blacks_, {});
    white_boundary.assign(whites_, 0);
    black_boundary.assign(blacks_, 0);
    for (const Edge& e : edges_) {
      if (e.white < 0 || e.white >= whites_ || e.black < 0 || e.black >= blacks_) {
        throw InvalidArgument("edge endpoint out of range");
      }
    }
    std::vector<std::vector<std::pair<int, int>>> wp(whites_), bp(blacks_);
    for (int i = 0; i < num_edges(); ++i) {
      wp[edges_[i].white].emplace_back(edges_[i].white_port, i);
      bp[edges_[i].black].emplace_back(edges_[i].black_port, i);
    }
    auto fill = [](auto& ports, auto& out, const char* side) {
      for (std::size_t v = 0; v < ports.size(); ++v) {
        std::sort(ports[v].begin(), ports[v].end());
        for (std::size_t k = 0; k < ports[v].size(); ++k) {
          if (ports[v][k].first != static_cast<int>(k) + 1) {
            throw InvalidArgument(std::string("ports of ") + side + " node " + std::to_string(v) +
                                  " are not a permutation of 1..deg");
          }
          out[v].push_back(ports[v][k].second);
        }
      }
    };
    fill(wp, white_ports_, "white");
    fill(bp, black_ports_, "black");
  }

  int whites_ = 0;
  int blacks_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> white_ports_;
  std::vector<std::vector<int>> black_ports_;
};

inline Json graph_to_json(const PortGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({e.white, e.white_port, e.black, e.black_port});
  }
  Json out = {{"white", g.whites()}, {"black", g.blacks()}, {"edges", std::move(edges)}};
  Json bw = Json::array(), bb = Json::array();
  for (int w = 0; w < g.whites(); ++w) {
    if (g.white_boundary[w]) bw.push_back(w);
  }
  for (int b = 0; b < g.blacks(); ++b) {
    if (g.black_boundary[b]) bb.push_back(b);
  }
  if (!bw.empty()) out["boundary_white"] = bw;
  if (!bb.empty()) out["boundary_black"] = bb;
  return out;
}

inline PortGraph graph_from_json(const Json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (e.size() != 4) throw InvalidArgument("edge entries are [w, pw, b, pb]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
    }
    PortGraph g(j.at("white").get<int>(), j.at("black").get<int>(), std::move(edges));
    for (const auto& w : j.value("boundary_white", Json::array())) {
      g.white_boundary.at(w.get<int>()) = 1;
    }
    for (const auto& b : j.value("boundary_black", Json::array())) {
      g.black_boundary.at(b.get<int>()) = 1;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed graph JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    throw InvalidArgument("boundary node out of range");
  }
}

/// Per-edge labels, aligned with PortGraph::edges().
using EdgeLabeling = std::vector<Label>;

inline Json labeling_to_json(const Problem& p, const EdgeLabeling& l) {
  Json out = Json::array();
  for (Label x : l) out.push_back(p.alphabet[x]);
  return out;
}

inline EdgeLabeling labeling_from_json(const Problem& p, const Json& j) {
  EdgeLabeling l;
  for (const auto& n : j) l.push_back(p.label(n.get<std::string>()));
  return l;
}

// ---------------------------------------------------------------------------
// Instances.

/// Name of the generator recorded with every instance. Bounded integers are
/// drawn as raw 64-bit outputs reduced modulo the bound.
inline constexpr const char* kPrngName = "mt19937_64/mod";

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t bound) { return gen_() % bound; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

enum class InstanceKind { kTree, kRegularBipartite, kCompleteBipartite };

inline InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "tree") return InstanceKind::kTree;
  if (s == "regular-bipartite" || s == "regular") return InstanceKind::kRegularBipartite;
  if (s == "complete-bipartite" || s == "complete") return InstanceKind::kCompleteBipartite;
  throw InvalidArgument("unknown instance kind '" + s + "'");
}

struct InstanceSpec {
  InstanceKind kind = InstanceKind::kRegularBipartite;
  int delta = 3;
  /// Total node count for regular-bipartite graphs.
  int n = 0;
  /// Depth for tree excerpts.
  int depth = 2;
  std::uint64_t seed = 1;
};

namespace detail {

/// Assigns random port numbers at every node.
inline PortGraph with_random_ports(int whites, int blacks,
                                   const std::vector<std::pair<int, int>>& pairs, Prng& rng) {
  std::vector<std::vector<int>> at_w(whites), at_b(blacks);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    at_w[pairs[i].first].push_back(static_cast<int>(i));
    at_b[pairs[i].second].push_back(static_cast<int>(i));
  }
  std::vector<Edge> edges(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edges[i].white = pairs[i].first;
    edges[i].black = pairs[i].second;
  }
  for (auto& v : at_w) {
    rng.shuffle(v);
    for (std::size_t k = 0; k < v.size(); ++k) edges[v[k]].white_port = static_cast<int>(k) + 1;
  }
  for (auto& v : at_b) {
    rng.shuffle(v);
    for (std::size_t k = 0; k < v.size(); ++k) edges[v[k]].black_port = static_cast<int>(k) + 1;
  }
  return PortGraph(whites, blacks, std::move(edges));
}

}  // namespace detail

/// Deterministic in `spec.seed`.
inline PortGraph gen_instance(const InstanceSpec& spec) {
  const int d = spec.delta;
  if (d < 1) throw InvalidArgument("delta must be positive");
  Prng rng(spec.seed);
  std::vector<std::pair<int, int>> pairs;
  switch (spec.kind) {
    case InstanceKind::kCompleteBipartite: {
      for (int w = 0; w < d; ++w) {
        for (int b = 0; b < d; ++b) pairs.emplace_back(w, b);
      }
      return detail::with_random_ports(d, d, pairs, rng);
    }
    case InstanceKind::kRegularBipartite: {
      if (spec.n % 2 != 0 || spec.n / 2 < d) {
        throw InvalidArgument("regular bipartite graph needs even n with n/2 >= delta");
      }
      const int m = spec.n / 2;
      for (int w = 0; w < m; ++w) {
        for (int k = 0; k < d; ++k) pairs.emplace_back(w, (w + k) % m);
      }
      // Double-edge swaps keep degrees and simplicity.
      std::set<std::pair<int, int>> present(pairs.begin(), pairs.end());
      const std::size_t swaps = pairs.size() * 4;
      for (std::size_t s = 0; s < swaps; ++s) {
        const std::size_t i = rng.below(pairs.size());
        const std::size_t j = rng.below(pairs.size());
        auto [w1, b1] = pairs[i];
        auto [w2, b2] = pairs[j];
        if (w1 == w2 || b1 == b2) continue;
        if (present.count({w1, b2}) || present.count({w2, b1})) continue;
        present.erase(pairs[i]);
        present.erase(pairs[j]);
        pairs[i] = {w1, b2};
        pairs[j] = {w2, b1};
        present.insert(pairs[i]);
        present.insert(pairs[j]);
      }
      return detail::with_random_ports(m, m, pairs, rng);
    }
    case InstanceKind::kTree: {
      if (spec.depth < 0) throw InvalidArgument("depth must be nonnegative");
      // Layer 0 is a white root; colours alternate by depth.
      int whites = 1, blacks = 0;
      std::vector<std::pair<bool, int>> frontier{{true, 0}};
      std::vector<std::pair<bool, int>> leaves;
      for (int level = 1; level <= spec.depth; ++level) {
        std::vector<std::pair<bool, int>> next;
        for (auto [is_white, id] : frontier) {
          const int children = level == 1 ? d : d - 1;
          for (int c = 0; c < children; ++c) {
            if (is_white) {
              pairs.emplace_back(id, blacks);
              next.emplace_back(false, blacks++);
            } else {
              pairs.emplace_back(whites, id);
              next.emplace_back(true, whites++);
            }
          }
        }
        frontier = std::move(next);
      }
      PortGraph g = detail::with_random_ports(whites, blacks, pairs, rng);
      for (int w = 0; w < whites; ++w) g.white_boundary[w] = g.white_degree(w) < d;
      for (int b = 0; b < blacks; ++b) g.black_boundary[b] = g.black_degree(b) < d;
      return g;
    }
  }
  throw InvalidArgument("unknown instance kind");
}

// ---------------------------------------------------------------------------
// Splitting.

struct SplitGraph {
  PortGraph graph;
  /// Original node of every mininode.
  std::vector<int> white_origin;
  std::vector<int> black_origin;
};

/// Contiguous parts of size `size` (the last one possibly smaller).
inline std::vector<int> contiguous_parts(int degree, int size) {
  if (size < 1) throw InvalidArgument("part size must be positive");
  std::vector<int> parts;
  for (int left = degree; left > 0; left -= size) parts.push_back(std::min(left, size));
  return parts;
}

inline int ceil_sqrt(int v) {
  int r = 0;
  while (r * r < v) ++r;
  return r;
}

/// Replaces every node by mininodes owning contiguous port ranges. Edge ids
/// are preserved, so edge sets pull back unchanged.
inline SplitGraph split_nodes(const PortGraph& g, const std::vector<std::vector<int>>& white_parts,
                              const std::vector<std::vector<int>>& black_parts) {
  if (static_cast<int>(white_parts.size()) != g.whites() ||
      static_cast<int>(black_parts.size()) != g.blacks()) {
    throw InvalidArgument("one partition per node is required");
  }
  SplitGraph out;
  std::vector<Edge> edges = g.edges();
  auto split_side = [&](int count, const std::vector<std::vector<int>>& parts, bool white,
                        std::vector<int>& origin) {
    for (int v = 0; v < count; ++v) {
      const int deg = white ? g.white_degree(v) : g.black_degree(v);
      int sum = 0;
      for (int s : parts[v]) {
        if (s < 1) throw InvalidArgument("partition sizes must be positive");
        sum += s;
      }
      if (sum != deg) {
        throw InvalidArgument("partition of " + std::string(white ? "white" : "black") +
                              " node " + std::to_string(v) + " sums to " + std::to_string(sum) +
                              ", degree is " + std::to_string(deg));
      }
      int port = 1;
      for (int s : parts[v]) {
        const int mini = static_cast<int>(origin.size());
        origin.push_back(v);
        for (int k = 0; k < s; ++k, ++port) {
          const int e = white ? g.white_edge(v, port) : g.black_edge(v, port);
          if (white) {
            edges[e].white = mini;
            edges[e].white_port = k + 1;
          } else {
            edges[e].black = mini;
            edges[e].black_port = k + 1;
          }
        }
      }
      if (deg == 0) origin.push_back(v);
    }
  };
  split_side(g.whites(), white_parts, true, out.white_origin);
  split_side(g.blacks(), black_parts, false, out.black_origin);
  out.graph = PortGraph(static_cast<int>(out.white_origin.size()),
                        static_cast<int>(out.black_origin.size()), std::move(edges));
  return out;
}

/// Splits every node into contiguous parts of size `size`.
inline SplitGraph split_uniform(const PortGraph& g, int size) {
  std::vector<std::vector<int>> wp, bp;
  for (int w = 0; w < g.whites(); ++w) wp.push_back(contiguous_parts(g.white_degree(w), size));
  for (int b = 0; b < g.blacks(); ++b) bp.push_back(contiguous_parts(g.black_degree(b), size));
  return split_nodes(g, wp, bp);
}

}  // namespace relim::sim
