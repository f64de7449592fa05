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

// JSON form of problems:
//   {"alphabet": [...], "active": {"degree": d, "confs": [[{"members": [...],
//    "exp": k}, ...], ...]}, "passive": {...}, "meta": "..."}
// Hashes are SHA-256 over the compact dump (keys sorted).

#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "relim/problem.hpp"
#include "relim/sha256.hpp"

namespace relim {

using Json = nlohmann::json;

inline Json word_to_json(const Problem& p, const Word& w) {
  Json out = Json::array();
  for (Label l : w) out.push_back(p.alphabet[l]);
  return out;
}

inline Word word_from_json(const Problem& p, const Json& j) {
  Word w;
  for (const auto& n : j) w.push_back(p.label(n.get<std::string>()));
  return make_word(std::move(w));
}

inline Json constraint_to_json(const Problem& p, const Constraint& c) {
  Json confs = Json::array();
  for (const Configuration& conf : c.configurations()) {
    Json groups = Json::array();
    for (const Group& g : conf.groups()) {
      Json members = Json::array();
      g.members.for_each([&](Label l) { members.push_back(p.alphabet[l]); });
      groups.push_back({{"members", members}, {"exp", g.exp}});
    }
    confs.push_back(std::move(groups));
  }
  return {{"degree", c.degree()}, {"confs", std::move(confs)}};
}

inline Json to_json(const Problem& p) {
  return {{"alphabet", p.alphabet},
          {"active", constraint_to_json(p, p.active)},
          {"passive", constraint_to_json(p, p.passive)},
          {"meta", p.meta}};
}

namespace detail {

inline Constraint constraint_from_json(const Problem& p, const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("confs")) {
    throw InvalidArgument("constraint JSON needs 'degree' and 'confs'");
  }
  std::vector<Configuration> confs;
  for (const auto& jc : j.at("confs")) {
    std::vector<Group> groups;
    for (const auto& jg : jc) {
      LabelSet members;
      for (const auto& n : jg.at("members")) members.insert(p.label(n.get<std::string>()));
      groups.push_back({members, jg.at("exp").get<int>()});
    }
    confs.emplace_back(std::move(groups));
  }
  return Constraint(j.at("degree").get<int>(), std::move(confs));
}

}  // namespace detail

inline Problem problem_from_json(const Json& j) {
  try {
    Problem p;
    p.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    if (p.alphabet.size() > static_cast<std::size_t>(kMaxAlphabetCap)) {
      throw AlphabetCapExceeded("alphabet exceeds " + std::to_string(kMaxAlphabetCap) + " labels");
    }
    p.active = detail::constraint_from_json(p, j.at("active"));
    p.passive = detail::constraint_from_json(p, j.at("passive"));
    if (j.contains("meta") && j.at("meta").is_string()) p.meta = j.at("meta").get<std::string>();
    validate(p);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed problem JSON: ") + e.what());
  }
}

inline std::string canonical_dump(const Json& j) { return j.dump(); }

/// Hash over the canonical serialization, ignoring the provenance note.
inline std::string problem_hash(const Problem& p) {
  Json j = to_json(p);
  j.erase("meta");
  return sha256_hex(canonical_dump(j));
}

}  // namespace relim
