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

// Repeated speedup with optional label identification between steps.

#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "relim/json_io.hpp"
#include "relim/merge.hpp"
#include "relim/speedup.hpp"
#include "relim/strength_order.hpp"
#include "relim/zero_round.hpp"

namespace relim {

enum class MergePolicy { kNone, kGreedy, kManualScript };

inline MergePolicy merge_policy_from_string(const std::string& s) {
  if (s == "none") return MergePolicy::kNone;
  if (s == "greedy") return MergePolicy::kGreedy;
  if (s == "manual-script" || s == "manual") return MergePolicy::kManualScript;
  throw InvalidArgument("unknown merge policy '" + s + "'");
}

struct IterateOptions {
  MergePolicy policy = MergePolicy::kNone;
  /// Greedy merging stops once the alphabet is at most this large.
  int greedy_target = 4;
  /// Manual policy: merge groups (label names) to apply after each step.
  std::vector<std::vector<std::vector<std::string>>> script;
  SpeedupOptions speedup;
};

struct MergeDecision {
  std::vector<std::string> labels;
  bool kept = false;
  std::string reason;
};

struct IterationStep {
  int step = 0;
  std::string input_hash;
  SpeedupResult speedup;
  /// Speedup output after dropping unusable labels.
  Problem simplified;
  std::vector<MergeDecision> merges;
  /// Problem handed to the next step.
  Problem result;
  std::string policy_failure;
  double speedup_seconds = 0;
  double merge_seconds = 0;
};

namespace detail {

inline bool active_zero_round(const Problem& p) {
  return zero_round_solvable(p, Side::kActive).solvable;
}

/// Candidate pairs: strength-order neighbours first, then the rest, each in
/// label order.
inline std::vector<std::pair<Label, Label>> merge_candidates(const Problem& p) {
  const LabelPoset poset = strength_order(p, Side::kPassive);
  std::vector<std::pair<Label, Label>> adjacent, rest;
  const auto edges = poset.hasse_edges();
  for (int a = 0; a < p.alphabet_size(); ++a) {
    for (int b = a + 1; b < p.alphabet_size(); ++b) {
      const auto la = static_cast<Label>(a);
      const auto lb = static_cast<Label>(b);
      bool adj = poset.leq(la, lb) && poset.leq(lb, la);
      for (auto [lo, hi] : edges) {
        adj = adj || (lo == la && hi == lb) || (lo == lb && hi == la);
      }
      (adj ? adjacent : rest).emplace_back(la, lb);
    }
  }
  adjacent.insert(adjacent.end(), rest.begin(), rest.end());
  return adjacent;
}

inline Problem greedy_merge(Problem p, int target, std::vector<MergeDecision>& log,
                            std::string& failure) {
  while (p.alphabet_size() > target) {
    bool merged = false;
    for (auto [a, b] : merge_candidates(p)) {
      MergeDecision d;
      d.labels = {p.alphabet[a], p.alphabet[b]};
      auto [q, f] = identify_labels(p, {d.labels});
      q = simplify(q).problem;
      if (active_zero_round(q)) {
        d.reason = "merged problem is 0-round solvable";
        log.push_back(std::move(d));
        continue;
      }
      d.kept = true;
      d.reason = "merged problem stays non-trivial";
      log.push_back(std::move(d));
      p = std::move(q);
      merged = true;
      break;
    }
    if (!merged) {
      failure = "no safe merge at " + std::to_string(p.alphabet_size()) + " labels";
      break;
    }
  }
  return p;
}

}  // namespace detail

inline std::vector<IterationStep> iterate_speedup(const Problem& start, int steps,
                                                  const IterateOptions& opts = {}) {
  if (steps < 1) throw InvalidArgument("steps must be at least 1");
  std::vector<IterationStep> out;
  Problem current = start;
  for (int s = 1; s <= steps; ++s) {
    IterationStep st;
    st.step = s;
    st.input_hash = problem_hash(current);
    const auto t0 = std::chrono::steady_clock::now();
    st.speedup = speedup(current, opts.speedup);
    st.simplified = simplify(st.speedup.problem).problem;
    const auto t1 = std::chrono::steady_clock::now();
    Problem next = st.simplified;
    switch (opts.policy) {
      case MergePolicy::kNone:
        break;
      case MergePolicy::kGreedy:
        next = detail::greedy_merge(std::move(next), opts.greedy_target, st.merges,
                                    st.policy_failure);
        break;
      case MergePolicy::kManualScript:
        if (static_cast<std::size_t>(s - 1) < opts.script.size() &&
            !opts.script[s - 1].empty()) {
          next = identify_labels(next, opts.script[s - 1]).first;
          for (const auto& g : opts.script[s - 1]) st.merges.push_back({g, true, "script"});
        }
        break;
    }
    const auto t2 = std::chrono::steady_clock::now();
    st.speedup_seconds = std::chrono::duration<double>(t1 - t0).count();
    st.merge_seconds = std::chrono::duration<double>(t2 - t1).count();
    st.result = next;
    current = std::move(next);
    out.push_back(std::move(st));
  }
  return out;
}

/// One JSON-lines trace record per step.
inline Json trace_record(const IterationStep& st) {
  Json dict = Json::object();
  for (std::size_t i = 0; i < st.speedup.dictionary.size(); ++i) {
    Json members = Json::array();
    st.speedup.dictionary[i].for_each(
        [&](Label l) { members.push_back(st.speedup.origin.alphabet[l]); });
    dict[st.speedup.problem.alphabet[i]] = members;
  }
  Json merges = Json::array();
  for (const auto& m : st.merges) {
    merges.push_back({{"labels", m.labels}, {"kept", m.kept}, {"reason", m.reason}});
  }
  Json rec = {{"step", st.step},
              {"op", st.merges.empty() ? "speedup" : "speedup+merge"},
              {"input_hash", st.input_hash},
              {"output_problem", to_json(st.result)},
              {"dictionary", dict},
              {"merges", merges},
              {"timings", {{"speedup_s", st.speedup_seconds}, {"merge_s", st.merge_seconds}}}};
  if (!st.policy_failure.empty()) rec["policy_failure"] = st.policy_failure;
  return rec;
}

}  // namespace relim
