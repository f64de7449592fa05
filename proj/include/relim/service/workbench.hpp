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

// The workbench: exploration sessions over the engine, addressed by
// (method, path, body) so it can be driven without a socket.
//
// Sessions are trees of problem nodes. Every mutation is one event in
// <data_dir>/sessions/<id>.jsonl; loading replays the operations and checks
// each node hash.

#pragma once

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relim/certificate.hpp"
#include "relim/json_io.hpp"
#include "relim/merge.hpp"
#include "relim/parse.hpp"
#include "relim/service/event_log.hpp"
#include "relim/service/jobs.hpp"
#include "relim/speedup.hpp"
#include "relim/strength_order.hpp"
#include "relim/zero_round.hpp"

namespace relim::service {

struct Config {
  std::string listen_addr = "127.0.0.1:8080";
  std::string data_dir = "workbench-data";
  int alphabet_cap = kDefaultAlphabetCap;
  int job_workers = 2;

  std::string host() const { return listen_addr.substr(0, listen_addr.rfind(':')); }
  int port() const {
    const auto colon = listen_addr.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("listen_addr needs host:port");
    return std::stoi(listen_addr.substr(colon + 1));
  }
};

/// Reads a JSON config (empty path: defaults), then applies WORKBENCH_*
/// environment overrides.
inline Config load_config(const std::string& path = "") {
  Config c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config " + path + ": " + e.what());
    }
    c.listen_addr = j.value("listen_addr", c.listen_addr);
    c.data_dir = j.value("data_dir", c.data_dir);
    c.alphabet_cap = j.value("alphabet_cap", c.alphabet_cap);
    c.job_workers = j.value("job_workers", c.job_workers);
  }
  if (const char* v = std::getenv("WORKBENCH_LISTEN_ADDR")) c.listen_addr = v;
  if (const char* v = std::getenv("WORKBENCH_DATA_DIR")) c.data_dir = v;
  if (const char* v = std::getenv("WORKBENCH_ALPHABET_CAP")) c.alphabet_cap = std::stoi(v);
  if (const char* v = std::getenv("WORKBENCH_JOB_WORKERS")) c.job_workers = std::stoi(v);
  if (c.alphabet_cap < 1 || c.alphabet_cap > kMaxAlphabetCap) {
    throw InvalidArgument("alphabet_cap must be in 1.." + std::to_string(kMaxAlphabetCap));
  }
  return c;
}

struct Response {
  int status = 200;
  Json body;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// HTTP status for an engine or request error.
inline int status_for(const std::exception& e) {
  if (dynamic_cast<const NotFound*>(&e)) return 404;
  if (dynamic_cast<const InvalidLabelMap*>(&e)) return 422;
  if (dynamic_cast<const AlphabetCapExceeded*>(&e) || dynamic_cast<const BudgetExceeded*>(&e)) {
    return 409;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const DegreeMismatch*>(&e) || dynamic_cast<const UnknownLabel*>(&e) ||
      dynamic_cast<const nlohmann::json::exception*>(&e)) {
    return 400;
  }
  return 500;
}

inline Json error_json(int status, const std::string& message) {
  return {{"error", {{"status", status}, {"message", message}}}};
}

struct Node {
  int id = 0;
  std::optional<int> parent;
  std::string op;
  Json params;
  Problem problem;
  std::string hash;
};

struct Session {
  std::string id;
  std::vector<Node> nodes;
  long long created = 0;
  long long updated = 0;
  std::mutex mu;
};

inline long long now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

inline std::string random_token() {
  static std::mutex mu;
  static std::mt19937_64 gen(std::random_device{}());
  std::lock_guard lock(mu);
  std::ostringstream s;
  s << std::hex << gen();
  return s.str();
}

/// Applies a recorded operation to a parent problem. Shared by live requests
/// and replay.
inline Problem apply_op(const Problem& parent, const std::string& op, const Json& params,
                        const SpeedupOptions& opts) {
  if (op == "speedup") {
    Problem q = speedup(parent, opts).problem;
    return params.value("simplify", true) ? simplify(q).problem : q;
  }
  if (op == "merge") {
    if (params.contains("groups")) {
      return identify_labels(parent, params.at("groups").get<std::vector<std::vector<std::string>>>())
          .first;
    }
    const Json& m = params.at("mapping");
    if (!m.is_object()) throw InvalidArgument("mapping must be an object");
    std::vector<std::string> names;
    std::vector<Label> f;
    for (const std::string& l : parent.alphabet) {
      if (!m.contains(l) || !m.at(l).is_string()) {
        throw InvalidLabelMap("merge map does not send label '" + l + "' anywhere");
      }
      const std::string t = m.at(l).get<std::string>();
      auto it = std::find(names.begin(), names.end(), t);
      if (it == names.end()) {
        if (!valid_label_name(t)) throw InvalidArgument("bad label name '" + t + "'");
        names.push_back(t);
        it = names.end() - 1;
      }
      f.push_back(static_cast<Label>(it - names.begin()));
    }
    for (auto& [k, v] : m.items()) parent.label(k);
    return merge_labels(parent, f, names);
  }
  throw InvalidArgument("unknown operation '" + op + "'");
}

inline Json openapi_spec() {
  auto op = [](std::string summary) { return Json{{"summary", std::move(summary)}}; };
  return {
      {"openapi", "3.0.3"},
      {"info", {{"title", "relim workbench"}, {"version", "1"}}},
      {"paths",
       {{"/sessions", {{"post", op("Create a session from problem text or JSON")}}},
        {"/sessions/{id}", {{"get", op("Session tree")}}},
        {"/sessions/{id}/nodes/{n}/speedup", {{"post", op("Speedup child node; async=true for a job")}}},
        {"/sessions/{id}/nodes/{n}/merge", {{"post", op("Merge child node from mapping or groups")}}},
        {"/sessions/{id}/nodes/{n}/zero-round", {{"post", op("0-round solvability of a node")}}},
        {"/sessions/{id}/nodes/{n}/strength-order", {{"post", op("Strength order of a node")}}},
        {"/problems/parse", {{"post", op("Parse problem text")}}},
        {"/certificates/build", {{"post", op("Start a certificate job {delta, maxT}")}}},
        {"/certificates/{id}", {{"get", op("Certificate job status and result")},
                                {"delete", op("Cancel a certificate job")}}},
        {"/jobs/{id}", {{"get", op("Job status")}, {"delete", op("Cancel a job")}}},
        {"/api/spec", {{"get", op("This document")}}}}},
      {"components",
       {{"responses",
         {{"400", op("invalid input")},
          {"404", op("unknown session, node or job")},
          {"409", op("engine cap exceeded")},
          {"422", op("merge map not total")}}}}}};
}

class Workbench {
 public:
  explicit Workbench(Config cfg)
      : cfg_(std::move(cfg)), jobs_(cfg_.job_workers, [](const std::exception& e) {
          return status_for(e);
        }) {}

  const Config& config() const { return cfg_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  Response handle(const std::string& method, const std::string& path, const std::string& body) {
    try {
      return route(method, path, body);
    } catch (const std::exception& e) {
      const int status = status_for(e);
      return {status, error_json(status, e.what())};
    }
  }

  /// Blocks until a job finishes; for tests and scripts.
  std::optional<JobInfo> wait_job(const std::string& id) const { return jobs_.wait(id); }

  /// Loads a persisted session by replaying its log.
  std::shared_ptr<Session> load_session(const std::string& id) {
    if (!valid_id(id)) throw NotFound("unknown session '" + id + "'");
    EventLog log(session_path(id));
    if (!std::filesystem::exists(log.path())) throw NotFound("unknown session '" + id + "'");
    LogContents c = log.load();
    if (!c.warning.empty()) warn(c.warning);
    auto s = std::make_shared<Session>();
    s->id = id;
    for (const Json& ev : c.events) {
      const std::string type = ev.at("event").get<std::string>();
      if (type == "create") {
        Node root;
        root.problem = problem_from_json(ev.at("problem"));
        root.hash = problem_hash(root.problem);
        root.op = "root";
        root.params = Json::object();
        s->created = s->updated = ev.value("ts", 0LL);
        s->nodes.push_back(std::move(root));
      } else if (type == "node") {
        const int parent = ev.at("parent").get<int>();
        if (parent < 0 || parent >= static_cast<int>(s->nodes.size())) {
          throw Error(id + ": event refers to missing node");
        }
        Node n;
        n.id = static_cast<int>(s->nodes.size());
        n.parent = parent;
        n.op = ev.at("op").get<std::string>();
        n.params = ev.at("params");
        n.problem = apply_op(s->nodes[parent].problem, n.op, n.params, speedup_options());
        n.hash = problem_hash(n.problem);
        if (n.hash != ev.at("hash").get<std::string>()) {
          throw Error(id + ": replay of node " + std::to_string(n.id) + " gives a different hash");
        }
        s->updated = ev.value("ts", s->updated);
        s->nodes.push_back(std::move(n));
      }
    }
    if (s->nodes.empty()) warn(id + ": empty log, session has no nodes");
    std::lock_guard lock(mu_);
    auto [it, fresh] = sessions_.emplace(id, s);
    return it->second;
  }

 private:
  static bool valid_id(const std::string& id) {
    if (id.empty() || id.size() > 64) return false;
    for (char ch : id) {
      if (!std::isalnum(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  }

  std::filesystem::path session_path(const std::string& id) const {
    return std::filesystem::path(cfg_.data_dir) / "sessions" / (id + ".jsonl");
  }

  SpeedupOptions speedup_options(std::stop_token st = {}) const {
    SpeedupOptions o;
    o.alphabet_cap = cfg_.alphabet_cap;
    o.stop = std::move(st);
    return o;
  }

  void warn(const std::string& w) {
    std::clog << "workbench: warning: " << w << '\n';
    std::lock_guard lock(mu_);
    warnings_.push_back(w);
  }

  static std::vector<std::string> split(const std::string& path) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : path.substr(0, path.find('?'))) {
      if (ch == '/') {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
  }

  static Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body);
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
    return j;
  }

  Problem problem_from_request(const Json& j) const {
    Problem p;
    if (j.contains("text")) {
      p = parse_problem(j.at("text").get<std::string>());
    } else if (j.contains("problem")) {
      p = problem_from_json(j.at("problem"));
    } else {
      throw InvalidArgument("expected 'text' or 'problem'");
    }
    validate(p, kMaxAlphabetCap);
    return p;
  }

  static Json node_json(const Node& n) {
    Json j = {{"id", n.id},
              {"op", n.op},
              {"params", n.params},
              {"hash", n.hash},
              {"problem", to_json(n.problem)},
              {"text", format_problem(n.problem)}};
    j["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    return j;
  }

  static Json session_json(const Session& s) {
    Json nodes = Json::array();
    for (const Node& n : s.nodes) nodes.push_back(node_json(n));
    return {{"id", s.id}, {"created", s.created}, {"updated", s.updated}, {"nodes", nodes}};
  }

  std::shared_ptr<Session> session(const std::string& id) {
    {
      std::lock_guard lock(mu_);
      auto it = sessions_.find(id);
      if (it != sessions_.end()) return it->second;
    }
    return load_session(id);
  }

  static const Node& node(const Session& s, const std::string& n) {
    int id = -1;
    try {
      std::size_t used = 0;
      id = std::stoi(n, &used);
      if (used != n.size()) id = -1;
    } catch (const std::exception&) {
      id = -1;
    }
    if (id < 0 || id >= static_cast<int>(s.nodes.size())) {
      throw NotFound("unknown node '" + n + "' in session " + s.id);
    }
    return s.nodes[id];
  }

  /// Adds a child under the session lock, unless it equals its parent.
  Response add_child(Session& s, int parent, const std::string& op, const Json& params,
                     Problem child) {
    const Node& par = s.nodes.at(parent);
    if (child.same_as(par.problem)) {
      return {200, {{"noop", true}, {"node", node_json(par)}}};
    }
    Node n;
    n.id = static_cast<int>(s.nodes.size());
    n.parent = parent;
    n.op = op;
    n.params = params;
    n.problem = std::move(child);
    n.hash = problem_hash(n.problem);
    s.updated = now_seconds();
    EventLog(session_path(s.id))
        .append({{"event", "node"},
                 {"id", n.id},
                 {"parent", parent},
                 {"op", op},
                 {"params", params},
                 {"hash", n.hash},
                 {"ts", s.updated}});
    s.nodes.push_back(std::move(n));
    return {201, {{"noop", false}, {"node", node_json(s.nodes.back())}}};
  }

  Response create_session(const Json& req) {
    Problem p = problem_from_request(req);
    auto s = std::make_shared<Session>();
    s->id = random_token();
    s->created = s->updated = now_seconds();
    Node root;
    root.op = "root";
    root.params = Json::object();
    root.problem = std::move(p);
    root.hash = problem_hash(root.problem);
    EventLog(session_path(s->id))
        .append({{"event", "create"},
                 {"session", s->id},
                 {"problem", to_json(root.problem)},
                 {"ts", s->created}});
    s->nodes.push_back(std::move(root));
    {
      std::lock_guard lock(mu_);
      sessions_[s->id] = s;
    }
    return {201, session_json(*s)};
  }

  static Json speedup_params(const Json& req) {
    return {{"simplify", req.value("simplify", true)}};
  }

  Response node_op(const std::string& sid, const std::string& nid, const std::string& what,
                   const Json& req) {
    auto s = session(sid);
    std::unique_lock lock(s->mu);
    const Node& n = node(*s, nid);
    const int parent = n.id;
    if (what == "speedup") {
      const Json params = speedup_params(req);
      if (req.value("async", false)) {
        const Problem src = n.problem;
        const std::string job = random_token();
        jobs_.submit(job, "speedup", [this, s, parent, params, src](std::stop_token st) {
          Problem q = apply_op(src, "speedup", params, speedup_options(st));
          std::lock_guard l(s->mu);
          return add_child(*s, parent, "speedup", params, std::move(q)).body;
        });
        return {202, {{"job", job}, {"status", "queued"}}};
      }
      return add_child(*s, parent, "speedup", params,
                       apply_op(n.problem, "speedup", params, speedup_options()));
    }
    if (what == "merge") {
      Json params = Json::object();
      if (req.contains("groups")) {
        params["groups"] = req.at("groups");
      } else if (req.contains("mapping")) {
        params["mapping"] = req.at("mapping");
      } else {
        throw InvalidArgument("merge needs 'mapping' or 'groups'");
      }
      return add_child(*s, parent, "merge", params,
                       apply_op(n.problem, "merge", params, speedup_options()));
    }
    if (what == "zero-round") {
      const Side side = req.value("side", "active") == "passive" ? Side::kPassive : Side::kActive;
      ZeroRoundResult z = zero_round_solvable(n.problem, side);
      Json refs = Json::array();
      for (const auto& r : z.refutations) {
        refs.push_back({{"candidate", word_to_json(n.problem, r.candidate)},
                        {"adversarial", word_to_json(n.problem, r.adversarial)}});
      }
      Json out = {{"node", n.id}, {"solvable", z.solvable}, {"refutations", refs}};
      out["witness"] = z.witness ? word_to_json(n.problem, *z.witness) : Json(nullptr);
      return {200, out};
    }
    if (what == "strength-order") {
      const Side side = req.value("side", "passive") == "active" ? Side::kActive : Side::kPassive;
      const LabelPoset po = strength_order(n.problem, side);
      Json classes = Json::array(), hasse = Json::array(), up = Json::object();
      for (LabelSet c : po.classes()) classes.push_back(labels_json(n.problem, c));
      for (auto [lo, hi] : po.hasse_edges()) {
        hasse.push_back({n.problem.alphabet[lo], n.problem.alphabet[hi]});
      }
      for (int x = 0; x < po.size(); ++x) {
        up[n.problem.alphabet[x]] = labels_json(n.problem, po.up_set(static_cast<Label>(x)));
      }
      return {200, {{"node", n.id}, {"classes", classes}, {"hasse", hasse}, {"up", up}}};
    }
    throw NotFound("unknown node operation '" + what + "'");
  }

  static Json labels_json(const Problem& p, LabelSet s) {
    Json out = Json::array();
    s.for_each([&](Label l) { out.push_back(p.alphabet[l]); });
    return out;
  }

  Response build_certificate_job(const Json& req) {
    const int delta = req.at("delta").get<int>();
    const int max_t = req.contains("maxT") ? req.at("maxT").get<int>() : req.value("max_t", 0);
    check_params({delta, 0, 0});
    if (max_t < 0) throw InvalidArgument("maxT must be nonnegative");
    const std::string id = random_token();
    const std::filesystem::path out =
        std::filesystem::path(cfg_.data_dir) / "certificates" / (id + ".json");
    jobs_.submit(id, "certificate", [this, delta, max_t, out](std::stop_token st) {
      SpeedupCertificate c = build_certificate(delta, max_t, speedup_options(st));
      Json doc = certificate_to_json(c);
      std::filesystem::create_directories(out.parent_path());
      std::ofstream(out) << doc.dump(2) << '\n';
      return doc;
    });
    return {202, {{"id", id}, {"status", "queued"}}};
  }

  Response job_response(const std::string& id, bool certificate) {
    auto info = jobs_.get(id);
    if (!info || (certificate && info->kind != "certificate")) {
      if (certificate) {
        const auto file = std::filesystem::path(cfg_.data_dir) / "certificates" / (id + ".json");
        if (valid_id(id) && std::filesystem::exists(file)) {
          std::ifstream in(file);
          return {200, {{"id", id}, {"status", "done"}, {"certificate", Json::parse(in)}}};
        }
      }
      throw NotFound("unknown job '" + id + "'");
    }
    Json out = {{"id", id}, {"kind", info->kind}, {"status", to_string(info->status)}};
    if (info->status == JobStatus::kDone) out[certificate ? "certificate" : "result"] = info->result;
    if (info->status == JobStatus::kFailed) {
      out["error"] = error_json(info->error_status, info->error)["error"];
    }
    return {200, out};
  }

  Response route(const std::string& method, const std::string& path, const std::string& body) {
    const auto seg = split(path);
    const auto n = seg.size();
    if (method == "GET" && n == 2 && seg[0] == "api" && seg[1] == "spec") {
      return {200, openapi_spec()};
    }
    if (method == "POST" && n == 2 && seg[0] == "problems" && seg[1] == "parse") {
      Problem p = problem_from_request(parse_body(body));
      return {200, {{"problem", to_json(p)}, {"hash", problem_hash(p)}, {"text", format_problem(p)}}};
    }
    if (n >= 1 && seg[0] == "sessions") {
      if (method == "POST" && n == 1) return create_session(parse_body(body));
      if (method == "GET" && n == 2) {
        auto s = session(seg[1]);
        std::lock_guard lock(s->mu);
        return {200, session_json(*s)};
      }
      if (method == "POST" && n == 5 && seg[2] == "nodes") {
        return node_op(seg[1], seg[3], seg[4], parse_body(body));
      }
    }
    if (n == 2 && seg[0] == "certificates") {
      if (method == "POST" && seg[1] == "build") return build_certificate_job(parse_body(body));
      if (method == "GET") return job_response(seg[1], true);
      if (method == "DELETE") {
        if (!jobs_.cancel(seg[1])) throw NotFound("unknown job '" + seg[1] + "'");
        return {202, {{"id", seg[1]}, {"cancel_requested", true}}};
      }
    }
    if (n == 2 && seg[0] == "jobs") {
      if (method == "GET") return job_response(seg[1], false);
      if (method == "DELETE") {
        if (!jobs_.cancel(seg[1])) throw NotFound("unknown job '" + seg[1] + "'");
        return {202, {{"id", seg[1]}, {"cancel_requested", true}}};
      }
    }
    throw NotFound("no route for " + method + " " + path);
  }

  Config cfg_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::string> warnings_;
  JobPool jobs_;
};

}  // namespace relim::service
