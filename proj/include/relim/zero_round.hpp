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

#pragma once

#include <optional>
#include <vector>

#include "relim/problem.hpp"

namespace relim {

/// One candidate output word of the chosen side together with a multiset the
/// adversary can wire around a node of the other side that is rejected.
struct ZeroRoundRefutation {
  Word candidate;
  Word adversarial;
};

struct ZeroRoundResult {
  bool solvable = false;
  std::optional<Word> witness;
  /// One entry per distinct candidate support, filled when not solvable.
  std::vector<ZeroRoundRefutation> refutations;
};

/// Deterministic 0-round solvability in the port-numbering model.
///
/// Every node of `side` outputs the same word w (up to the port order). The
/// adversary wires each node of the other side to arbitrary ports of
/// arbitrary neighbours, so that node can observe any multiset over the
/// support of w. The problem is solvable iff some w makes all of those
/// multisets acceptable.
inline ZeroRoundResult zero_round_solvable(const Problem& p, Side side) {
  const Constraint& chooser = p.side(side);
  const Constraint& checker = p.side(other(side));
  ZeroRoundResult result;

  std::vector<LabelSet> tried;
  for (const Word& w : expand(chooser)) {
    LabelSet support;
    for (Label l : w) support.insert(l);
    bool seen = false;
    for (LabelSet t : tried) seen = seen || t == support;
    if (seen) continue;
    tried.push_back(support);

    std::optional<Word> bad;
    for_each_multiset(support.labels(), checker.degree(), [&](const Word& m) {
      if (!bad && !member(checker, m)) bad = m;
    });
    if (!bad) {
      result.solvable = true;
      result.witness = w;
      result.refutations.clear();
      return result;
    }
    result.refutations.push_back({w, *bad});
  }
  return result;
}

}  // namespace relim
