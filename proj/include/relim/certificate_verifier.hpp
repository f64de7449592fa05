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

// Stand-alone certificate checking. Nothing here calls the speedup engine:
// each speedup step is recomputed by plain enumeration over expanded words,
// relaxations are re-run, and the final 0-round refutation is brute-forced.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "relim/json_io.hpp"
#include "relim/parse.hpp"
#include "relim/problem.hpp"
#include "relim/relaxation.hpp"
#include "relim/sha256.hpp"

namespace relim {

inline constexpr int kCertificateSchemaVersion = 1;

struct VerificationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerificationReport {
  bool ok = false;
  std::optional<int> rounds;
  std::string statement;
  std::vector<VerificationCheck> checks;
};

namespace verify {

using WordSet = std::set<Word>;

inline WordSet word_set(const Constraint& c) {
  auto w = expand(c);
  return WordSet(w.begin(), w.end());
}

/// Maximal matching written out from scratch: M O^(D-1) | P^D against
/// M [PO]^(D-1) | O^D.
inline Problem mm_problem(int delta) {
  auto pow = [](const std::string& g, int k) -> std::string {
    if (k <= 0) return "";
    return " " + g + (k > 1 ? "^" + std::to_string(k) : "");
  };
  const std::string text = "labels: M P O\nwhite: M" + pow("O", delta - 1) + " |" +
                           pow("P", delta) + "\nblack: M" + pow("[PO]", delta - 1) + " |" +
                           pow("O", delta) + "\n";
  return parse_problem(text);
}

/// y may replace one x in every word of `words` without leaving `words`.
inline std::vector<LabelSet> naive_up_sets(const WordSet& words, int n) {
  std::vector<LabelSet> up(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      bool ok = true;
      for (const Word& w : words) {
        auto it = std::find(w.begin(), w.end(), static_cast<Label>(x));
        if (it == w.end()) continue;
        Word v = w;
        v[it - w.begin()] = static_cast<Label>(y);
        std::sort(v.begin(), v.end());
        if (!words.count(v)) {
          ok = false;
          break;
        }
      }
      if (ok) up[x].insert(static_cast<Label>(y));
    }
  }
  return up;
}

/// Calls f on every word obtained by picking one member per set.
template <typename F>
bool all_choices(const std::vector<LabelSet>& sets, F&& f) {
  Word w(sets.size());
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == sets.size()) {
      Word v = w;
      std::sort(v.begin(), v.end());
      return f(v);
    }
    bool go = true;
    sets[i].for_each([&](Label l) {
      if (!go) return;
      w[i] = l;
      go = self(self, i + 1);
    });
    return go;
  };
  return rec(rec, 0);
}

inline bool universal(const std::vector<LabelSet>& fam, const WordSet& passive) {
  return all_choices(fam, [&](const Word& v) { return passive.count(v) > 0; });
}

inline bool existential(const std::vector<LabelSet>& fam, const WordSet& active) {
  return !all_choices(fam, [&](const Word& v) { return active.count(v) == 0; });
}

/// Recomputes the speedup of `before` by enumeration and compares it with the
/// claimed problem and dictionary. Returns an empty string on success.
inline std::string check_speedup(const Problem& before, const Problem& claimed,
                                 const std::vector<LabelSet>& dict) {
  const int n = before.alphabet_size();
  const WordSet passive = word_set(before.passive);
  const WordSet active = word_set(before.active);
  const auto up = naive_up_sets(passive, n);
  std::vector<LabelSet> closed;
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    LabelSet s(bits);
    bool ok = true;
    s.for_each([&](Label x) { ok = ok && up[x].subset_of(s); });
    if (ok) closed.push_back(s);
  }

  std::set<std::vector<LabelSet>> valid;
  std::vector<LabelSet> fam;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(fam.size()) == before.passive.degree()) {
      if (universal(fam, passive)) {
        auto f = fam;
        std::sort(f.begin(), f.end());
        valid.insert(f);
      }
      return;
    }
    for (std::size_t i = from; i < closed.size(); ++i) {
      fam.push_back(closed[i]);
      self(self, i);
      fam.pop_back();
    }
  };
  rec(rec, 0);

  std::set<std::vector<LabelSet>> maximal;
  for (const auto& f : valid) {
    bool is_max = true;
    for (std::size_t i = 0; i < f.size() && is_max; ++i) {
      for (LabelSet t : closed) {
        if (!f[i].strict_subset_of(t)) continue;
        auto g = f;
        g[i] = t;
        if (universal(g, passive)) {
          is_max = false;
          break;
        }
      }
    }
    if (is_max) maximal.insert(f);
  }

  if (static_cast<int>(dict.size()) != claimed.alphabet_size()) {
    return "dictionary size differs from the claimed alphabet";
  }
  std::set<std::vector<LabelSet>> listed;
  for (const Configuration& c : claimed.active.configurations()) {
    std::vector<LabelSet> f;
    for (const Group& g : c.groups()) {
      if (g.members.size() != 1) return "claimed active side has a non-plain configuration";
      for (int k = 0; k < g.exp; ++k) f.push_back(dict[g.members.lowest()]);
    }
    std::sort(f.begin(), f.end());
    listed.insert(f);
  }
  if (listed != maximal) {
    return "active side lists " + std::to_string(listed.size()) + " families, enumeration finds " +
           std::to_string(maximal.size()) + " maximal ones";
  }
  std::set<LabelSet> used;
  for (const auto& f : maximal) used.insert(f.begin(), f.end());
  if (std::set<LabelSet>(dict.begin(), dict.end()) != used || used.size() != dict.size()) {
    return "alphabet is not the set of labels used by the maximal families";
  }

  const WordSet claimed_passive = word_set(claimed.passive);
  std::vector<Label> ids;
  for (int i = 0; i < claimed.alphabet_size(); ++i) ids.push_back(static_cast<Label>(i));
  std::string err;
  for_each_multiset(ids, before.active.degree(), [&](const Word& w) {
    if (!err.empty()) return;
    std::vector<LabelSet> sets;
    for (Label l : w) sets.push_back(dict[l]);
    const bool want = existential(sets, active);
    if (want != (claimed_passive.count(w) > 0)) {
      err = "passive side disagrees on " + format_word(claimed, w);
    }
  });
  if (!err.empty()) return err;
  if (claimed_passive.size() > 0 &&
      static_cast<int>(claimed_passive.begin()->size()) != before.active.degree()) {
    return "passive degree mismatch";
  }
  return "";
}

/// Brute force: every active word of `p` has a rejected multiset over its
/// support. Returns an empty string on success.
inline std::string check_zero_round_refuted(const Problem& p) {
  const WordSet passive = word_set(p.passive);
  for (const Word& w : expand(p.active)) {
    LabelSet support;
    for (Label l : w) support.insert(l);
    bool refuted = false;
    for_each_multiset(support.labels(), p.passive.degree(), [&](const Word& m) {
      refuted = refuted || passive.count(m) == 0;
    });
    if (!refuted) return "active word " + format_word(p, w) + " solves the problem in 0 rounds";
  }
  return "";
}

}  // namespace verify

inline VerificationReport verify_certificate(const Json& doc) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };
  try {
    if (!add("schema", doc.value("schema", "") == "relim-speedup-certificate" &&
                           doc.value("schema_version", 0) == kCertificateSchemaVersion)) {
      return rep;
    }
    const Json& body = doc.at("body");
    if (!add("digest", sha256_hex(canonical_dump(body)) == doc.at("digest").get<std::string>(),
             "sha256 over the canonical body")) {
      return rep;
    }
    const int delta = body.at("delta").get<int>();
    const auto& steps = body.at("steps");
    Problem expected = verify::mm_problem(delta);

    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Json& st = steps[i];
      const std::string tag = "step " + std::to_string(i);
      Problem before = problem_from_json(st.at("problem_before"));
      if (!add(tag + ": input", before.same_as(expected),
               i == 0 ? "start is the maximal matching encoding"
                      : "input is the previous relaxation target")) {
        return rep;
      }
      Problem sp = problem_from_json(st.at("speedup").at("problem"));
      std::vector<LabelSet> dict;
      for (const auto& name : sp.alphabet) {
        LabelSet s;
        for (const auto& m : st.at("speedup").at("dictionary").at(name)) {
          s.insert(before.label(m.get<std::string>()));
        }
        dict.push_back(s);
      }
      const std::string sp_err = verify::check_speedup(before, sp, dict);
      if (!add(tag + ": speedup", sp_err.empty(), sp_err)) return rep;

      Problem target = problem_from_json(st.at("target"));
      LabelMap f;
      for (const auto& name : sp.alphabet) {
        const Json& img = st.at("mapping").at(name);
        if (img.is_null()) {
          f.image.emplace_back();
        } else {
          f.image.emplace_back(target.label(img.get<std::string>()));
        }
      }
      RelaxationReport r = relaxation_check(sp, target, f);
      if (!add(tag + ": relaxation", r.ok, r.failure)) return rep;
      bool transcript_ok = true;
      for (const auto& a : st.at("transcript").at("active_steps")) {
        transcript_ok = transcript_ok && member(target.active, word_from_json(target, a.at("image")));
      }
      if (!add(tag + ": transcript", transcript_ok)) return rep;
      expected = target;
    }

    Problem final_problem = problem_from_json(body.at("final").at("problem"));
    if (!add("final: chain end", final_problem.same_as(expected))) return rep;
    const std::string zr = verify::check_zero_round_refuted(final_problem);
    const bool refuted = zr.empty();

    const auto& claims = body.at("claims");
    if (claims.empty()) {
      add("claims", true, "no lower bound claimed");
      rep.statement = "no claim";
      rep.ok = true;
      return rep;
    }
    if (!add("final: 0-round refutation", refuted, zr)) return rep;
    const int claimed = claims.at(0).at("rounds_gt").get<int>();
    if (!add("claims", claimed == static_cast<int>(steps.size()),
             "claimed bound equals the number of verified steps")) {
      return rep;
    }
    rep.rounds = claimed;
    rep.statement = claims.at(0).value("statement", "");
    rep.ok = true;
  } catch (const std::exception& e) {
    add("structure", false, e.what());
  }
  return rep;
}

}  // namespace relim
