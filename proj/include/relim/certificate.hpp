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

// Lower-bound certificates for maximal matching.
//
// A certificate starts at Pi_D(0,0), and each step records a speedup, the
// relaxation into Pi'_D(x + 1, y + x) and its transcript. The last problem
// must not be 0-round solvable. T recorded steps then show that white
// algorithms need more than T rounds. Problems are embedded in full so a
// verifier needs nothing but the file.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relim/certificate_verifier.hpp"
#include "relim/json_io.hpp"
#include "relim/mm_family.hpp"
#include "relim/zero_round.hpp"

namespace relim {

struct CertificateStep {
  FamilyParams params;
  FamilyParams next;
  bool hypothesis = false;
  Problem before;
  SpeedupResult speedup;
  Problem target;
  LabelMap map;
  RelaxationReport report;
};

struct SpeedupCertificate {
  int delta = 1;
  int max_t = 0;
  std::vector<CertificateStep> steps;
  FamilyParams final_params;
  Problem final_problem;
  ZeroRoundResult final_zero_round;
  /// Number of rounds exceeded; empty when no bound could be certified.
  std::optional<int> rounds;
  std::vector<std::string> notes;
};

/// Chains lemma certifications from Pi_D(0,0), then keeps the longest prefix
/// whose last problem is refuted in 0 rounds.
inline SpeedupCertificate build_certificate(int delta, int max_t, const SpeedupOptions& opts = {}) {
  if (max_t < 0) throw InvalidArgument("max_t must be nonnegative");
  SpeedupCertificate cert;
  cert.delta = delta;
  cert.max_t = max_t;
  FamilyParams f{delta, 0, 0};
  check_params(f);
  std::vector<FamilyParams> chain{f};
  for (int t = 0; t < max_t; ++t) {
    if (!f.lemma_hypothesis()) {
      cert.notes.push_back("chain stops at " + f.to_string() + ": lemma hypothesis fails");
      break;
    }
    LemmaReport r;
    try {
      r = certify_lemma(f, opts);
    } catch (const AlphabetCapExceeded& e) {
      cert.notes.push_back(std::string("chain truncated: ") + e.what());
      break;
    }
    if (!r.ok) {
      cert.notes.push_back("chain stops at " + f.to_string() + ": " + r.failure);
      break;
    }
    CertificateStep st;
    st.params = r.params;
    st.next = r.next;
    st.hypothesis = r.hypothesis;
    st.before = r.source;
    st.speedup = std::move(r.speedup);
    st.target = r.target;
    st.map = r.mapping->map;
    st.report = r.mapping->report;
    cert.steps.push_back(std::move(st));
    f = r.next;
    chain.push_back(f);
  }
  for (int t = static_cast<int>(cert.steps.size()); t >= 0; --t) {
    Problem p = make_pi(chain[t]);
    ZeroRoundResult z = zero_round_solvable(p, Side::kActive);
    if (!z.solvable) {
      cert.steps.resize(t);
      cert.rounds = t;
      cert.final_params = chain[t];
      cert.final_problem = std::move(p);
      cert.final_zero_round = std::move(z);
      return cert;
    }
    cert.notes.push_back(chain[t].to_string() + " is 0-round solvable");
  }
  cert.steps.clear();
  cert.final_params = chain[0];
  cert.final_problem = make_pi(chain[0]);
  cert.final_zero_round = zero_round_solvable(cert.final_problem, Side::kActive);
  return cert;
}

namespace detail {

inline Json params_json(const FamilyParams& f) {
  return {{"delta", f.delta}, {"x", f.x}, {"y", f.y}};
}

inline Json map_json(const Problem& from, const Problem& to, const LabelMap& m) {
  Json out = Json::object();
  for (std::size_t i = 0; i < m.image.size(); ++i) {
    out[from.alphabet[i]] = m.image[i] ? Json(to.alphabet[*m.image[i]]) : Json(nullptr);
  }
  return out;
}

inline Json dictionary_json(const SpeedupResult& s) {
  Json out = Json::object();
  for (std::size_t i = 0; i < s.dictionary.size(); ++i) {
    Json members = Json::array();
    s.dictionary[i].for_each([&](Label l) { members.push_back(s.origin.alphabet[l]); });
    out[s.problem.alphabet[i]] = members;
  }
  return out;
}

}  // namespace detail

inline std::string certificate_statement(const SpeedupCertificate& c) {
  if (!c.rounds) {
    return "no lower bound: Pi_" + std::to_string(c.delta) + "(0,0) is 0-round solvable";
  }
  return "maximal matching at Delta=" + std::to_string(c.delta) + " needs more than " +
         std::to_string(*c.rounds) +
         " rounds (white algorithms, port-numbering model)";
}

inline Json certificate_body(const SpeedupCertificate& c) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const CertificateStep& st = c.steps[i];
    const Problem& sp = st.speedup.problem;
    Json active_steps = Json::array();
    for (const ActiveStep& a : st.report.active_steps) {
      active_steps.push_back({{"config", a.config},
                              {"word", word_to_json(sp, a.word)},
                              {"upgraded", word_to_json(sp, a.upgraded)},
                              {"image", word_to_json(st.target, a.image)}});
    }
    steps.push_back({{"index", i},
                     {"params", detail::params_json(st.params)},
                     {"next", detail::params_json(st.next)},
                     {"hypothesis", st.hypothesis},
                     {"problem_before", to_json(st.before)},
                     {"problem_before_hash", problem_hash(st.before)},
                     {"speedup",
                      {{"problem", to_json(sp)},
                       {"dictionary", detail::dictionary_json(st.speedup)},
                       {"hash", problem_hash(sp)}}},
                     {"target", to_json(st.target)},
                     {"mapping", detail::map_json(sp, st.target, st.map)},
                     {"transcript",
                      {{"mode", "upgrade-then-map"},
                       {"active_steps", std::move(active_steps)},
                       {"passive_configs_checked", st.report.passive_configs_checked}}}});
  }
  Json refutations = Json::array();
  for (const auto& r : c.final_zero_round.refutations) {
    refutations.push_back({{"candidate", word_to_json(c.final_problem, r.candidate)},
                           {"adversarial", word_to_json(c.final_problem, r.adversarial)}});
  }
  Json claims = Json::array();
  if (c.rounds) {
    claims.push_back({{"problem", "Pi_" + std::to_string(c.delta) + "(0,0)"},
                      {"rounds_gt", *c.rounds},
                      {"statement", certificate_statement(c)}});
  }
  return {{"delta", c.delta},
          {"max_t", c.max_t},
          {"model", "port-numbering, deterministic white algorithms"},
          {"claims", std::move(claims)},
          {"start", detail::params_json({c.delta, 0, 0})},
          {"steps", std::move(steps)},
          {"final",
           {{"params", detail::params_json(c.final_params)},
            {"problem", to_json(c.final_problem)},
            {"zero_round",
             {{"solvable", c.final_zero_round.solvable},
              {"refutations", std::move(refutations)}}}}},
          {"notes", c.notes}};
}

inline Json certificate_to_json(const SpeedupCertificate& c) {
  Json body = certificate_body(c);
  const std::string digest = sha256_hex(canonical_dump(body));
  return {{"schema", "relim-speedup-certificate"},
          {"schema_version", kCertificateSchemaVersion},
          {"body", std::move(body)},
          {"digest", digest}};
}

}  // namespace relim
