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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "relim/bounds.hpp"
#include "relim/certificate.hpp"
#include "relim/certificate_verifier.hpp"
#include "relim/merge.hpp"
#include "relim/mm_family.hpp"
#include "relim/sha256.hpp"
#include "relim/sim/matching.hpp"
#include "relim/sim/oracles.hpp"
#include "relim/sim/port_graph.hpp"
#include "relim/speedup.hpp"
#include "relim/zero_round.hpp"

namespace {

using namespace relim;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Label-count trajectory of the maximal matching encoding.
void trajectory(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int delta : {2, 3}) {
    Problem p = make_pi({delta, 0, 0});
    std::vector<int> counts;
    for (int step = 0; step < 2; ++step) {
      SpeedupResult r = speedup(p);
      const std::string err = verify::check_speedup(p, r.problem, r.dictionary);
      if (!err.empty()) o.fail("speedup mismatch at D=" + std::to_string(delta) + ": " + err);
      p = simplify(r.problem).problem;
      counts.push_back(p.alphabet_size());
    }
    o.detail << "D=" << delta << ": " << counts[0] << "," << counts[1] << " labels; ";
    if (counts != std::vector<int>{4, 6}) o.fail("unexpected label counts");
  }
  const double s = seconds_since(t0);
  o.detail << s << " s";
  if (s >= 10) o.fail(" too slow");
}

// Step certification over the small parameter grid, with the table at (7,1,1).
void step_grid(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0;
  for (int d = 1; d <= 7; ++d) {
    for (int x = 0; 2 * x + 1 <= d; ++x) {
      for (int y = 0; 2 * x + y + 1 <= d && x + y <= d - 1; ++y) {
        ++cases;
        LemmaReport r = certify_lemma({d, x, y});
        if (!r.ok) {
          o.fail(r.params.to_string() + ": " + r.failure + "; ");
          continue;
        }
        const std::string err =
            verify::check_speedup(r.source, r.speedup.problem, r.speedup.dictionary);
        if (!err.empty()) o.fail(r.params.to_string() + ": " + err + "; ");
        if (!relaxation_check(r.speedup.problem, r.target, r.mapping->map).ok) {
          o.fail(r.params.to_string() + ": mapping does not re-check; ");
        }
        if (d == 7 && x == 1 && y == 1) {
          const std::vector<std::pair<std::string, std::string>> table{
              {"<M,X>", "M"}, {"<O,X>", "P"}, {"<P,O,X>", "O"}, {"<M,P,O,X>", "X"}};
          for (const auto& [from, to] : table) {
            auto img = r.mapping->map.image.at(r.speedup.problem.label(from));
            if (!img || r.target.alphabet[*img] != to) o.fail("(7,1,1) table differs at " + from);
          }
        }
      }
    }
  }
  const double s = seconds_since(t0);
  o.detail << cases << " parameter triples, (7,1,1) table checked; " << s << " s";
  if (s >= 300) o.fail(" too slow");
}

Problem random_small_problem(std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(rng() % 4);
  const int dw = 1 + static_cast<int>(rng() % 5);
  const int db = 1 + static_cast<int>(rng() % 5);
  Problem p;
  for (int i = 0; i < n; ++i) p.alphabet.push_back(std::string(1, static_cast<char>('A' + i)));
  std::vector<Label> all;
  for (int i = 0; i < n; ++i) all.push_back(static_cast<Label>(i));
  auto side = [&](int d) {
    std::vector<Configuration> confs;
    for_each_multiset(all, d, [&](const Word& w) {
      if (rng() % 3 != 0) confs.push_back(Configuration::from_word(w));
    });
    if (confs.empty()) confs.push_back(Configuration::from_word(Word(d, 0)));
    return Constraint(d, std::move(confs));
  };
  p.active = side(dw);
  p.passive = side(db);
  return p;
}

// Base case refutation and agreement with the brute-force oracle.
void base_case(Outcome& o) {
  int base = 0;
  for (int d = 2; d <= 8; ++d) {
    for (int x = 0; x <= d - 2; ++x) {
      ++base;
      const FamilyParams f{d, x, d - 2 - x};
      if (zero_round_solvable(make_pi(f), Side::kActive).solvable) {
        o.fail(f.to_string() + " reported 0-round solvable; ");
      }
    }
  }
  int family = 0;
  for (int d = 1; d <= sim::kBruteForceMaxDegree; ++d) {
    for (int x = 0; x <= d; ++x) {
      for (int y = 0; x + y <= d; ++y) {
        ++family;
        Problem p = make_pi({d, x, y});
        if (sim::brute_force_zero_round(p) != zero_round_solvable(p, Side::kActive).solvable) {
          o.fail(FamilyParams{d, x, y}.to_string() + " disagrees with brute force; ");
        }
      }
    }
  }
  std::mt19937_64 rng(2026);
  int random = 0, solvable = 0;
  for (; random < 3000; ++random) {
    Problem p = random_small_problem(rng);
    const bool brute = sim::brute_force_zero_round(p);
    solvable += brute;
    if (brute != zero_round_solvable(p, Side::kActive).solvable) {
      o.fail("random problem disagrees: " + format_problem(p) + "; ");
    }
  }
  o.detail << base << " base triples refuted; " << family << " family and " << random
           << " random problems agree with brute force (" << solvable << " solvable)";
}

// End-to-end certificate at D=5 with two rounds, plus tampering.
void certificate(Outcome& o) {
  const Json doc = certificate_to_json(build_certificate(5, 2));
  const Json reread = Json::parse(doc.dump(2));
  VerificationReport r = verify_certificate(reread);
  if (!r.ok || r.rounds != 2) o.fail("certificate does not verify with 2 rounds; ");

  std::string text = doc.dump();
  const std::size_t at = text.find("\"active_steps\"");
  const std::size_t flip = text.find("\"<", at);
  if (at == std::string::npos || flip == std::string::npos) {
    o.fail("no transcript found; ");
  } else {
    text[flip + 2] = text[flip + 2] == 'M' ? 'P' : 'M';
    bool rejected = true;
    try {
      rejected = !verify_certificate(Json::parse(text)).ok;
    } catch (const std::exception&) {
      rejected = true;
    }
    if (!rejected) o.fail("tampered certificate verified; ");
  }
  o.detail << (r.ok ? r.statement : std::string("verification failed"))
           << "; one-byte tamper rejected";
}

// Closed form of the iterated parameter step.
void corollary(Outcome& o) {
  int checked = 0;
  for (int x = 0; x <= 5; ++x) {
    for (int y = 0; y <= 5; ++y) {
      FamilyParams f{1 << 20, x, y};
      for (int t = 0; t <= 100; ++t) {
        ++checked;
        if (f.x != x + t || 2 * f.y != 2 * y + t * (2 * x + t - 1)) {
          o.fail("mismatch at x=" + std::to_string(x) + " y=" + std::to_string(y) +
                 " T=" + std::to_string(t));
        }
        if (param_steps({1 << 20, x, y}, t) != f) o.fail("param_steps differs");
        f = param_step(f);
      }
    }
  }
  o.detail << checked << " (x,y,T) triples exact";
}

bool rel_close(long double a, long double b) {
  return std::fabs(a - b) <= 1e-9L * std::max<long double>(1, std::max(std::fabs(a), std::fabs(b)));
}

// Amplification composition and the proof chain inequality.
void arithmetic(Outcome& o) {
  int grid = 0;
  for (int d = 2; d <= 8; ++d) {
    for (int t = 1; t <= 5; ++t) {
      for (int k = 0; k <= 64; ++k) {
        ++grid;
        const ErrorBound p = ErrorBound::pow2(k);
        ErrorBound q = p;
        long double plain = -k;
        for (int i = 0; i < t; ++i) {
          q = amplified_error(q, d);
          plain = std::log2(5.0L * d) + plain / (d + 1);
        }
        const ErrorBound closed = iterated_error(p, d, t);
        const long double closed_plain =
            std::log2(25.0L * d * d) - k / std::pow(static_cast<long double>(d + 1), t);
        if (!rel_close(q.log2, plain) || !rel_close(closed.log2, closed_plain)) {
          o.fail("log-domain drift at D=" + std::to_string(d) + "; ");
        }
        if (q.log2 > closed.log2) o.fail("composition exceeds closed form; ");
      }
    }
  }
  int chain = 0;
  for (int d = 8; d <= 16; ++d) {
    for (int t = 0; t <= 2; ++t) {
      ++chain;
      const MultiRoundThreshold m = multi_round_threshold(d, t);
      const long double lhs = std::pow(d + 1.0L, t) *
                              (std::log2(25.0L * d * d) + d * std::log2(static_cast<long double>(d)));
      const long double rhs = std::pow(static_cast<long double>(d), 2 * t + 2);
      if (!rel_close(m.chain_lhs_log2, lhs) || !rel_close(m.chain_rhs_log2, rhs)) {
        o.fail("chain arithmetic drift; ");
      }
      if (!m.chain_holds || !(lhs < rhs)) o.fail("chain fails at D=" + std::to_string(d) + "; ");
    }
  }
  o.detail << grid << " composition points, " << chain << " chain points";
}

// Augmenting-path assignment of the node's labels to the expanded slots of
// some configuration.
bool fits(const Constraint& c, const Word& word) {
  for (const Configuration& conf : c.configurations()) {
    std::vector<LabelSet> slots;
    for (const Group& g : conf.groups()) slots.insert(slots.end(), g.exp, g.members);
    if (slots.size() != word.size()) continue;
    std::vector<int> owner(slots.size(), -1);
    bool all = true;
    for (std::size_t i = 0; i < word.size() && all; ++i) {
      std::vector<char> seen(slots.size(), 0);
      std::function<bool(std::size_t)> augment = [&](std::size_t item) {
        for (std::size_t s = 0; s < slots.size(); ++s) {
          if (seen[s] || !slots[s].contains(word[item])) continue;
          seen[s] = 1;
          if (owner[s] < 0 || augment(static_cast<std::size_t>(owner[s]))) {
            owner[s] = static_cast<int>(item);
            return true;
          }
        }
        return false;
      };
      all = augment(i);
    }
    if (all) return true;
  }
  return false;
}

// Independent per-node check of a labeling.
bool explicit_check(const Problem& p, const sim::PortGraph& g, const sim::EdgeLabeling& l) {
  for (int w = 0; w < g.whites(); ++w) {
    if (g.white_boundary[w]) continue;
    Word word;
    for (int port = 1; port <= g.white_degree(w); ++port) word.push_back(l[g.white_edge(w, port)]);
    if (!fits(p.active, word)) return false;
  }
  for (int b = 0; b < g.blacks(); ++b) {
    if (g.black_boundary[b]) continue;
    Word word;
    for (int port = 1; port <= g.black_degree(b); ++port) word.push_back(l[g.black_edge(b, port)]);
    if (!fits(p.passive, word)) return false;
  }
  return true;
}

// Independent k-matching check by counting incident chosen edges.
bool explicit_k_matching(const sim::PortGraph& g, const std::vector<int>& edges, int k) {
  std::vector<int> wc(g.whites()), bc(g.blacks());
  std::set<int> chosen(edges.begin(), edges.end());
  if (chosen.size() != edges.size()) return false;
  for (int id : edges) {
    ++wc[g.edge(id).white];
    ++bc[g.edge(id).black];
  }
  for (int id = 0; id < g.num_edges(); ++id) {
    const auto& e = g.edge(id);
    if (wc[e.white] > k || bc[e.black] > k) return false;
    if (wc[e.white] == 0 && bc[e.black] == 0) return false;
  }
  return true;
}

int instance_size(int delta, std::uint64_t seed) {
  const int lo = 2 * delta;
  return lo + 2 * static_cast<int>(seed % ((500 - lo) / 2 + 1));
}

struct GridRun {
  int instances = 0;
  int failures = 0;
};

GridRun proposal_grid(bool labeling_only) {
  GridRun g;
  for (int d = 2; d <= 6; ++d) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ++g.instances;
      sim::PortGraph graph = sim::gen_instance(
          {sim::InstanceKind::kRegularBipartite, d, instance_size(d, seed * 7919), 0, seed});
      sim::ProposalRun run = sim::run_proposal(graph);
      const auto edges = run.matching.edges(graph);
      bool ok = true;
      if (labeling_only) {
        const Problem p = sim::k_matching_problem(graph, 1);
        const auto l = sim::k_matching_labeling(graph, edges, 1);
        ok = sim::check_solution(p, graph, l).ok && explicit_check(p, graph, l);
      } else {
        const Problem p = make_pi({d, 0, 0});
        const auto l = sim::mm_labeling(graph, run.matching);
        ok = run.iterations <= d && sim::check_solution(p, graph, l).ok &&
             explicit_check(p, graph, l) && explicit_k_matching(graph, edges, 1);
      }
      g.failures += !ok;
    }
  }
  return g;
}

GridRun split_grid(bool labeling) {
  GridRun g;
  for (int d : {4, 9, 16}) {
    const int k = sim::ceil_sqrt(d);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ++g.instances;
      sim::PortGraph graph = sim::gen_instance(
          {sim::InstanceKind::kRegularBipartite, d, instance_size(d, seed * 104729), 0, seed});
      sim::SplitGraph split = sim::split_uniform(graph, k);
      const auto edges = sim::run_proposal(split.graph).matching.edges(split.graph);
      bool ok = sim::k_matching_check(graph, edges, k).ok && explicit_k_matching(graph, edges, k);
      if (ok && labeling) {
        const Problem p = sim::k_matching_problem(graph, k);
        const auto l = sim::k_matching_labeling(graph, edges, k);
        ok = p.same_as(make_pi({d, k - 1, 0})) && sim::check_solution(p, graph, l).ok &&
             explicit_check(p, graph, l);
      }
      g.failures += !ok;
    }
  }
  return g;
}

void simulator(Outcome& o) {
  const GridRun a = proposal_grid(false);
  const GridRun b = split_grid(false);
  o.detail << "proposal " << a.failures << "/" << a.instances << " failures; split-then-match "
           << b.failures << "/" << b.instances << " failures";
  if (a.failures + b.failures > 0) o.fail("");
}

void k_matching_labels(Outcome& o) {
  const GridRun a = proposal_grid(true);
  const GridRun b = split_grid(true);
  o.detail << "k=1 grid " << a.failures << "/" << a.instances << " failures; k=ceil(sqrt D) grid "
           << b.failures << "/" << b.instances << " failures";
  if (a.failures + b.failures > 0) o.fail("");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"label-count trajectory", trajectory},
      {"step certification grid", step_grid},
      {"base case and brute-force agreement", base_case},
      {"end-to-end certificate D=5 T=2", certificate},
      {"parameter step closed form", corollary},
      {"error amplification arithmetic", arithmetic},
      {"simulator oracle", simulator},
      {"k-matching labeling", k_matching_labels},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
