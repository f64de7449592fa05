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

// The maximal matching encoding and its relaxations Pi_D(x, y).
//
//   white: (M O^(d-1) | P^d) O^y X^x
//   black: ([MX] [POX]^(d-1) | [OX]^d) [POX]^y [MPOX]^x      with d = D - x - y
//
// For x = 0 the label X is absent. For d = 0 the parenthesised alternatives
// vanish: white O^y X^x, black [POX]^y [MPOX]^x.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relim/problem.hpp"
#include "relim/relaxation.hpp"
#include "relim/relaxation_search.hpp"
#include "relim/speedup.hpp"

namespace relim {

struct FamilyParams {
  int delta = 1;
  int x = 0;
  int y = 0;

  int d() const { return delta - x - y; }
  bool valid() const { return delta >= 1 && x >= 0 && y >= 0 && x + y <= delta; }
  /// Hypothesis of the one-step speedup lemma.
  bool lemma_hypothesis() const { return delta >= 2 * x + y + 1; }

  std::string to_string() const {
    return "(" + std::to_string(delta) + "," + std::to_string(x) + "," + std::to_string(y) + ")";
  }
  bool operator==(const FamilyParams&) const = default;
};

inline void check_params(const FamilyParams& f) {
  if (!f.valid()) throw InvalidArgument("invalid family parameters " + f.to_string());
  if (f.delta > 64) throw InvalidArgument("delta above 64 is not supported");
}

namespace detail {

struct FamilyLabels {
  LabelSet m, p, o, x;
};

inline Configuration family_config(std::vector<Group> gs) {
  std::vector<Group> kept;
  for (Group& g : gs) {
    if (g.exp > 0 && !g.members.empty()) kept.push_back(g);
  }
  return Configuration(std::move(kept));
}

}  // namespace detail

inline Problem make_pi(const FamilyParams& f) {
  check_params(f);
  Problem p;
  p.alphabet = {"M", "P", "O"};
  if (f.x > 0) p.alphabet.push_back("X");
  const LabelSet M = LabelSet::single(0);
  const LabelSet P = LabelSet::single(1);
  const LabelSet O = LabelSet::single(2);
  const LabelSet X = f.x > 0 ? LabelSet::single(3) : LabelSet();
  const int d = f.d();

  std::vector<Configuration> white;
  std::vector<Configuration> black;
  if (d > 0) {
    white.push_back(detail::family_config({{M, 1}, {O, d - 1 + f.y}, {X, f.x}}));
    white.push_back(detail::family_config({{P, d}, {O, f.y}, {X, f.x}}));
    black.push_back(detail::family_config(
        {{M | X, 1}, {P | O | X, d - 1 + f.y}, {M | P | O | X, f.x}}));
    black.push_back(
        detail::family_config({{O | X, d}, {P | O | X, f.y}, {M | P | O | X, f.x}}));
  } else {
    white.push_back(detail::family_config({{O, f.y}, {X, f.x}}));
    black.push_back(detail::family_config({{P | O | X, f.y}, {M | P | O | X, f.x}}));
  }
  p.active = Constraint(f.delta, std::move(white));
  p.passive = Constraint(f.delta, std::move(black));
  p.meta = "Pi_" + std::to_string(f.delta) + "(" + std::to_string(f.x) + "," +
           std::to_string(f.y) + ")";
  return p;
}

/// The same problem with the two sides exchanged.
inline Problem reverse_roles(const Problem& p) {
  Problem q = p;
  std::swap(q.active, q.passive);
  q.meta = "reversed(" + p.meta + ")";
  return q;
}

/// Pi'_D(x, y): Pi_D(x, y) solved by a black algorithm. A speedup result
/// keeps the outputting side active, so in this representation the target
/// has white constraint W_D(x, y) on its active side, like Pi_D(x, y) itself.
inline Problem primed_target(const FamilyParams& f) {
  Problem p = make_pi(f);
  p.meta = "Pi'_" + std::to_string(f.delta) + "(" + std::to_string(f.x) + "," +
           std::to_string(f.y) + ")";
  return p;
}

inline FamilyParams param_step(const FamilyParams& f) { return {f.delta, f.x + 1, f.y + f.x}; }

inline FamilyParams param_steps(FamilyParams f, int t) {
  for (int i = 0; i < t; ++i) f = param_step(f);
  return f;
}

struct LemmaReport {
  FamilyParams params;
  FamilyParams next;
  bool hypothesis = false;
  bool ok = false;
  Problem source;
  SpeedupResult speedup;
  Problem target;
  std::optional<RelaxationMapping> mapping;
  std::string failure;
  double speedup_seconds = 0;
  double search_seconds = 0;
};

/// Speeds up Pi_D(x, y) and searches a relaxation into Pi'_D(x + 1, y + x).
inline LemmaReport certify_lemma(const FamilyParams& f, const SpeedupOptions& opts = {}) {
  check_params(f);
  LemmaReport r;
  r.params = f;
  r.next = param_step(f);
  r.hypothesis = f.lemma_hypothesis();
  if (!r.next.valid()) {
    r.failure = "successor parameters " + r.next.to_string() + " are not a valid family";
    return r;
  }
  r.source = make_pi(f);
  const auto t0 = std::chrono::steady_clock::now();
  r.speedup = speedup(r.source, opts);
  const auto t1 = std::chrono::steady_clock::now();
  r.target = primed_target(r.next);
  r.mapping = find_relaxation_mapping(r.speedup.problem, r.target);
  const auto t2 = std::chrono::steady_clock::now();
  r.speedup_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.search_seconds = std::chrono::duration<double>(t2 - t1).count();
  r.ok = r.mapping.has_value() && r.mapping->report.ok;
  if (!r.ok) r.failure = "no relaxation into " + r.target.meta;
  return r;
}

struct KMatchingParams {
  int delta = 1;
  int x = 0;
  double t_threshold = 0;
};

/// x = floor(sqrt D), y = 0, and the round threshold sqrt(D)/16.
inline KMatchingParams k_matching_lower_bound_params(int delta) {
  if (delta < 1) throw InvalidArgument("delta must be positive");
  int x = static_cast<int>(std::sqrt(static_cast<double>(delta)));
  while ((x + 1) * (x + 1) <= delta) ++x;
  while (x * x > delta) --x;
  return {delta, x, std::sqrt(static_cast<double>(delta)) / 16.0};
}

}  // namespace relim
