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

// relim: batch front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relim/bounds.hpp"
#include "relim/certificate.hpp"
#include "relim/iterate.hpp"
#include "relim/merge.hpp"
#include "relim/mm_family.hpp"
#include "relim/parse.hpp"
#include "relim/sim/oracles.hpp"
#include "relim/speedup.hpp"
#include "relim/strength_order.hpp"
#include "relim/zero_round.hpp"

namespace {

using relim::Json;
using relim::Problem;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string format = "human";
  bool json() const { return format == "json"; }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw relim::InvalidArgument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_input(path));
  } catch (const nlohmann::json::exception& e) {
    throw relim::InvalidArgument(path + ": " + e.what());
  }
}

/// Problem text, or problem JSON when the input starts with '{'.
Problem read_problem(const std::string& path) {
  const std::string text = read_input(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  Problem p;
  if (first != std::string::npos && text[first] == '{') {
    p = relim::problem_from_json(Json::parse(text));
  } else {
    p = relim::parse_problem(text);
  }
  relim::validate(p, relim::kMaxAlphabetCap);
  return p;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw relim::InvalidArgument("cannot write " + path);
}

Json problem_doc(const Problem& p) {
  return {{"problem", relim::to_json(p)}, {"hash", relim::problem_hash(p)}};
}

void print_poset(const Problem& p, relim::Side side) {
  const relim::LabelPoset po = relim::strength_order(p, side);
  std::cout << "strength order (" << (side == relim::Side::kActive ? "white" : "black")
            << "):\n";
  for (relim::LabelSet c : po.classes()) {
    if (c.size() < 2) continue;
    std::cout << "  equivalent:";
    c.for_each([&](relim::Label l) { std::cout << ' ' << p.alphabet[l]; });
    std::cout << '\n';
  }
  for (auto [lo, hi] : po.hasse_edges()) {
    std::cout << "  " << p.alphabet[lo] << "\n    < " << p.alphabet[hi] << '\n';
  }
}

Json dictionary_json(const relim::SpeedupResult& s, const Problem& shown) {
  Json d = Json::object();
  for (std::size_t i = 0; i < s.dictionary.size(); ++i) {
    const std::string& name = s.problem.alphabet[i];
    if (!shown.find(name)) continue;
    Json m = Json::array();
    s.dictionary[i].for_each([&](relim::Label l) { m.push_back(s.origin.alphabet[l]); });
    d[name] = m;
  }
  return d;
}

relim::sim::PortGraph graph_input(const std::string& input, const std::string& kind, int delta,
                                  int n, int depth, std::uint64_t seed) {
  if (!input.empty()) return relim::sim::graph_from_json(read_json(input));
  if (kind.empty()) throw relim::InvalidArgument("give --input or --gen");
  relim::sim::InstanceSpec spec;
  spec.kind = relim::sim::instance_kind_from_string(kind);
  spec.delta = delta;
  spec.n = n;
  spec.depth = depth;
  spec.seed = seed;
  return relim::sim::gen_instance(spec);
}

/// "2^-k" or a decimal probability.
relim::ErrorBound parse_probability(const std::string& s) {
  if (s.rfind("2^-", 0) == 0) return relim::ErrorBound::pow2(std::stold(s.substr(3)));
  return relim::ErrorBound::from_value(std::stold(s));
}

std::string fmt_log2(long double l) {
  std::ostringstream s;
  if (std::isinf(l)) return "0";
  s << "2^" << std::setprecision(12) << static_cast<double>(l);
  return s.str();
}

Json bound_json(const relim::ErrorBound& b) {
  Json j = {{"log2", std::isinf(b.log2) ? Json(nullptr) : Json(static_cast<double>(b.log2))},
            {"provenance", b.provenance},
            {"flags", b.flags}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relim: round elimination for edge-labeling problems"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
  int cap = relim::kDefaultAlphabetCap;
  int threads = 1;
  app.add_option("--cap", cap, "Alphabet cap for speedup outputs")->capture_default_str();
  app.add_option("--threads", threads, "Speedup worker threads")->capture_default_str();

  std::string input = "-";
  bool show_poset = false;
  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a problem");
  parse_cmd->add_option("input", input, "Problem file or - for stdin");
  parse_cmd->add_flag("--poset", show_poset, "Also print the strength orders");

  int steps = 1;
  bool no_simplify = false;
  std::string policy = "none";
  int greedy_target = 4;
  std::string trace_path;
  auto* speedup_cmd = app.add_subcommand("speedup", "Apply speedup steps");
  speedup_cmd->add_option("input", input, "Problem file or - for stdin");
  speedup_cmd->add_option("--steps", steps)->check(CLI::Range(1, 64))->capture_default_str();
  speedup_cmd->add_flag("--no-simplify", no_simplify, "Keep unusable labels");
  speedup_cmd->add_option("--merge-policy", policy)
      ->check(CLI::IsMember({"none", "greedy"}))
      ->capture_default_str();
  speedup_cmd->add_option("--greedy-target", greedy_target)->capture_default_str();
  speedup_cmd->add_option("--trace", trace_path, "JSON-lines trace file");

  std::vector<std::string> groups;
  auto* merge_cmd = app.add_subcommand("merge", "Identify labels");
  merge_cmd->add_option("input", input, "Problem file or - for stdin");
  merge_cmd->add_option("--group", groups, "Space-separated labels to merge (repeatable)")
      ->required();

  std::string side = "active";
  auto* zero_cmd = app.add_subcommand("zero-round", "Decide 0-round solvability");
  zero_cmd->add_option("input", input, "Problem file or - for stdin");
  zero_cmd->add_option("--side", side)
      ->check(CLI::IsMember({"active", "passive"}))
      ->capture_default_str();

  int delta = 3, x = 0, y = 0;
  bool primed = false;
  auto* family_cmd = app.add_subcommand("family", "Print Pi_D(x, y)");
  family_cmd->add_option("--delta", delta)->required();
  family_cmd->add_option("--x", x)->capture_default_str();
  family_cmd->add_option("--y", y)->capture_default_str();
  family_cmd->add_flag("--primed", primed, "Black-algorithm variant");

  int max_t = 1;
  std::string out_path;
  auto* certify_cmd = app.add_subcommand("certify", "Build a lower-bound certificate");
  certify_cmd->add_option("--delta", delta)->required();
  certify_cmd->add_option("--max-t", max_t)->required();
  certify_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify-cert", "Check a certificate");
  verify_cmd->add_option("file", cert_path, "Certificate file or -")->required();

  auto* sim_cmd = app.add_subcommand("sim", "Finite-instance simulation");
  sim_cmd->require_subcommand(1);
  std::string gen_kind, labels_path, problem_path, graph_path;
  int n = 0, depth = 2, part_size = 0;
  std::uint64_t seed = 1;
  std::string family_spec;
  auto add_graph_opts = [&](CLI::App* c) {
    c->add_option("--input", graph_path, "Graph JSON or -");
    c->add_option("--gen", gen_kind, "Generate: tree, regular-bipartite, complete-bipartite");
    c->add_option("--delta", delta)->capture_default_str();
    c->add_option("--n", n, "Node count for regular-bipartite");
    c->add_option("--depth", depth, "Depth for tree")->capture_default_str();
    c->add_option("--seed", seed)->capture_default_str();
  };
  auto* gen_cmd = sim_cmd->add_subcommand("gen", "Generate an instance");
  add_graph_opts(gen_cmd);
  gen_cmd->add_option("--out", out_path);
  auto* run_cmd = sim_cmd->add_subcommand("run-proposal", "Run the proposal algorithm");
  add_graph_opts(run_cmd);
  run_cmd->add_option("--out", out_path, "Labeling output");
  auto* split_cmd = sim_cmd->add_subcommand("split-match", "Split nodes, match, pull back");
  add_graph_opts(split_cmd);
  split_cmd->add_option("--part-size", part_size, "Default: ceil(sqrt(delta))");
  split_cmd->add_option("--out", out_path, "k-matching labeling output");
  auto* check_cmd = sim_cmd->add_subcommand("check", "Check a labeling");
  add_graph_opts(check_cmd);
  check_cmd->add_option("--labels", labels_path)->required();
  check_cmd->add_option("--problem", problem_path, "Problem file");
  check_cmd->add_option("--family", family_spec, "D,x,y instead of --problem");

  std::string p_text = "2^-64";
  int t = 1;
  auto* bounds_cmd = app.add_subcommand("bounds", "Error-probability arithmetic");
  bounds_cmd->add_option("--delta", delta)->required();
  bounds_cmd->add_option("--t", t)->capture_default_str();
  bounds_cmd->add_option("--p", p_text, "Probability, e.g. 2^-40 or 1e-9")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  relim::SpeedupOptions sopts;
  sopts.alphabet_cap = cap;
  sopts.threads = threads;

  try {
    if (*parse_cmd) {
      Problem p = read_problem(input);
      if (g.json()) {
        std::cout << problem_doc(p).dump(2) << '\n';
      } else {
        std::cout << relim::format_problem(p);
        if (show_poset) {
          print_poset(p, relim::Side::kActive);
          print_poset(p, relim::Side::kPassive);
        }
      }
      return kOk;
    }

    if (*speedup_cmd) {
      Problem p = read_problem(input);
      relim::IterateOptions opts;
      opts.policy = relim::merge_policy_from_string(policy);
      opts.greedy_target = greedy_target;
      opts.speedup = sopts;
      std::vector<Json> records;
      Problem current = p;
      std::ofstream trace;
      if (!trace_path.empty()) trace.open(trace_path);
      Json steps_out = Json::array();
      if (no_simplify) {
        for (int s = 1; s <= steps; ++s) {
          relim::SpeedupResult r = relim::speedup(current, sopts);
          current = r.problem;
          steps_out.push_back({{"step", s},
                               {"problem", relim::to_json(current)},
                               {"dictionary", dictionary_json(r, current)}});
          if (!g.json()) {
            std::cout << "# step " << s << ": " << current.alphabet_size() << " labels\n"
                      << relim::format_problem(current);
          }
        }
      } else {
        for (const relim::IterationStep& st : relim::iterate_speedup(p, steps, opts)) {
          Json rec = relim::trace_record(st);
          if (trace) trace << rec.dump() << '\n';
          steps_out.push_back(rec);
          if (!g.json()) {
            std::cout << "# step " << st.step << ": " << st.speedup.problem.alphabet_size()
                      << " labels, " << st.simplified.alphabet_size() << " after simplify";
            if (st.result.alphabet_size() != st.simplified.alphabet_size()) {
              std::cout << ", " << st.result.alphabet_size() << " after merging";
            }
            std::cout << '\n' << relim::format_problem(st.result);
            if (!st.policy_failure.empty()) std::cout << "# " << st.policy_failure << '\n';
          }
          current = st.result;
        }
      }
      if (g.json()) std::cout << Json{{"steps", steps_out}}.dump(2) << '\n';
      return kOk;
    }

    if (*merge_cmd) {
      Problem p = read_problem(input);
      std::vector<std::vector<std::string>> gs;
      for (const std::string& grp : groups) {
        std::vector<std::string> names;
        std::stringstream ss(grp);
        for (std::string item; ss >> item;) names.push_back(item);
        gs.push_back(std::move(names));
      }
      Problem q = relim::identify_labels(p, gs).first;
      if (g.json()) {
        std::cout << problem_doc(q).dump(2) << '\n';
      } else {
        std::cout << relim::format_problem(q);
      }
      return kOk;
    }

    if (*zero_cmd) {
      Problem p = read_problem(input);
      const relim::Side s = side == "active" ? relim::Side::kActive : relim::Side::kPassive;
      relim::ZeroRoundResult z = relim::zero_round_solvable(p, s);
      if (g.json()) {
        Json refs = Json::array();
        for (const auto& r : z.refutations) {
          refs.push_back({{"candidate", relim::word_to_json(p, r.candidate)},
                          {"adversarial", relim::word_to_json(p, r.adversarial)}});
        }
        std::cout << Json{{"solvable", z.solvable},
                          {"witness", z.witness ? relim::word_to_json(p, *z.witness) : Json()},
                          {"refutations", refs}}
                         .dump(2)
                  << '\n';
      } else if (z.solvable) {
        std::cout << "0-round solvable: every " << (s == relim::Side::kActive ? "white" : "black")
                  << " node outputs " << relim::format_word(p, *z.witness) << '\n';
      } else {
        std::cout << "not 0-round solvable\n";
        for (const auto& r : z.refutations) {
          std::cout << "  " << relim::format_word(p, r.candidate) << " is refuted by "
                    << relim::format_word(p, r.adversarial) << '\n';
        }
      }
      return kOk;
    }

    if (*family_cmd) {
      const relim::FamilyParams f{delta, x, y};
      Problem p = primed ? relim::primed_target(f) : relim::make_pi(f);
      if (g.json()) {
        std::cout << problem_doc(p).dump(2) << '\n';
      } else {
        std::cout << "# " << p.meta << '\n' << relim::format_problem(p);
      }
      return kOk;
    }

    if (*certify_cmd) {
      relim::SpeedupCertificate c = relim::build_certificate(delta, max_t, sopts);
      const Json doc = relim::certificate_to_json(c);
      write_output(out_path, doc.dump(2) + "\n");
      if (!out_path.empty()) std::clog << relim::certificate_statement(c) << '\n';
      return kOk;
    }

    if (*verify_cmd) {
      Json doc;
      try {
        doc = Json::parse(read_input(cert_path));
      } catch (const nlohmann::json::exception& e) {
        if (g.json()) {
          std::cout << Json{{"ok", false}, {"error", e.what()}}.dump(2) << '\n';
        } else {
          std::cout << "FAIL: not valid JSON: " << e.what() << '\n';
        }
        return kVerifyFailed;
      }
      const relim::VerificationReport rep = relim::verify_certificate(doc);
      if (g.json()) {
        Json checks = Json::array();
        for (const auto& ch : rep.checks) {
          checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
        }
        std::cout << Json{{"ok", rep.ok},
                          {"rounds_gt", rep.rounds ? Json(*rep.rounds) : Json()},
                          {"statement", rep.statement},
                          {"checks", checks}}
                         .dump(2)
                  << '\n';
      } else {
        for (const auto& ch : rep.checks) {
          std::cout << (ch.ok ? "ok   " : "FAIL ") << ch.name;
          if (!ch.detail.empty()) std::cout << ": " << ch.detail;
          std::cout << '\n';
        }
        std::cout << (rep.ok ? "certificate valid: " + rep.statement : "certificate rejected")
                  << '\n';
      }
      return rep.ok ? kOk : kVerifyFailed;
    }

    if (*sim_cmd) {
      relim::sim::PortGraph graph = graph_input(graph_path, gen_kind, delta, n, depth, seed);

      if (*gen_cmd) {
        Json doc = relim::sim::graph_to_json(graph);
        Json meta = {{"prng", relim::sim::kPrngName}, {"seed", seed}};
        if (!gen_kind.empty()) doc["generator"] = meta;
        write_output(out_path, doc.dump() + "\n");
        return kOk;
      }
      if (*run_cmd) {
        relim::sim::ProposalRun run = relim::sim::run_proposal(graph);
        const relim::sim::EdgeLabeling l = relim::sim::mm_labeling(graph, run.matching);
        const Problem p = relim::make_pi({std::max(1, graph.max_white_degree()), 0, 0});
        const auto rep = relim::sim::check_solution(p, graph, l);
        const Json summary = {{"iterations", run.iterations},
                              {"rounds_one_per_iteration", run.rounds_single()},
                              {"rounds_two_per_iteration", run.rounds_double()},
                              {"matched_edges", run.matching.edges(graph).size()},
                              {"check_ok", rep.ok}};
        if (!out_path.empty()) write_output(out_path, relim::sim::labeling_to_json(p, l).dump() + "\n");
        if (g.json()) {
          Json out = summary;
          if (out_path.empty()) out["labels"] = relim::sim::labeling_to_json(p, l);
          std::cout << out.dump(2) << '\n';
        } else {
          std::cout << "iterations " << run.iterations << " (rounds " << run.rounds_single()
                    << " or " << run.rounds_double() << "), matched "
                    << run.matching.edges(graph).size() << " edges, "
                    << (rep.ok ? "labeling passes " : "labeling FAILS ") << p.meta << '\n';
        }
        return rep.ok ? kOk : kVerifyFailed;
      }
      if (*split_cmd) {
        const int dmax = std::max(graph.max_white_degree(), graph.max_black_degree());
        const int size = part_size > 0 ? part_size : relim::sim::ceil_sqrt(dmax);
        const relim::sim::SplitGraph sg = relim::sim::split_uniform(graph, size);
        const relim::sim::ProposalRun run = relim::sim::run_proposal(sg.graph);
        const std::vector<int> edges = run.matching.edges(sg.graph);
        const auto km = relim::sim::k_matching_check(graph, edges, size);
        bool ok = km.ok;
        Json summary = {{"part_size", size},
                        {"mininodes_white", sg.graph.whites()},
                        {"mininodes_black", sg.graph.blacks()},
                        {"iterations", run.iterations},
                        {"edges", edges},
                        {"k_matching_ok", km.ok}};
        if (km.ok) {
          const auto l = relim::sim::k_matching_labeling(graph, edges, size);
          const Problem p = relim::sim::k_matching_problem(graph, size);
          const auto rep = relim::sim::check_solution(p, graph, l);
          ok = rep.ok;
          summary["labeling_problem"] = p.meta;
          summary["labeling_ok"] = rep.ok;
          if (!out_path.empty()) {
            write_output(out_path, relim::sim::labeling_to_json(p, l).dump() + "\n");
          }
        }
        if (g.json()) {
          std::cout << summary.dump(2) << '\n';
        } else {
          std::cout << "parts of size " << size << ", " << run.iterations << " iterations, "
                    << edges.size() << " edges, " << size << "-matching "
                    << (km.ok ? "ok" : "VIOLATED");
          if (summary.contains("labeling_ok")) {
            std::cout << ", labeling " << (ok ? "passes " : "FAILS ")
                      << summary["labeling_problem"].get<std::string>();
          }
          std::cout << '\n';
        }
        return ok ? kOk : kVerifyFailed;
      }
      if (*check_cmd) {
        Problem p;
        if (!problem_path.empty()) {
          p = read_problem(problem_path);
        } else if (!family_spec.empty()) {
          int d = 0, fx = 0, fy = 0;
          char c1 = 0, c2 = 0;
          std::stringstream ss(family_spec);
          if (!(ss >> d >> c1 >> fx >> c2 >> fy) || c1 != ',' || c2 != ',') {
            throw relim::InvalidArgument("--family expects D,x,y");
          }
          p = relim::make_pi({d, fx, fy});
        } else {
          throw relim::InvalidArgument("give --problem or --family");
        }
        const auto l = relim::sim::labeling_from_json(p, read_json(labels_path));
        const auto rep = relim::sim::check_solution(p, graph, l);
        if (g.json()) {
          Json fails = Json::array();
          for (const auto& f : rep.failures) {
            fails.push_back({{"node", relim::sim::to_string(f.node)},
                             {"labels", f.labels},
                             {"reason", f.reason}});
          }
          std::cout << Json{{"ok", rep.ok},
                            {"white_checked", rep.white_checked},
                            {"black_checked", rep.black_checked},
                            {"white_failed", rep.white_failed},
                            {"black_failed", rep.black_failed},
                            {"skipped", rep.skipped},
                            {"failures", fails}}
                           .dump(2)
                    << '\n';
        } else {
          std::cout << (rep.ok ? "ok" : "FAIL") << ": white " << rep.white_checked - rep.white_failed
                    << "/" << rep.white_checked << ", black "
                    << rep.black_checked - rep.black_failed << "/" << rep.black_checked
                    << ", boundary skipped " << rep.skipped << '\n';
          for (const auto& f : rep.failures) {
            std::cout << "  " << relim::sim::to_string(f.node) << ": " << f.reason << '\n';
          }
        }
        return rep.ok ? kOk : kVerifyFailed;
      }
    }

    if (*bounds_cmd) {
      const relim::ErrorBound p = parse_probability(p_text);
      const auto q = relim::amplified_error(p, delta);
      const auto it = relim::iterated_error(p, delta, t);
      const auto base = relim::base_threshold(delta);
      const auto mr = relim::multi_round_threshold(delta, t);
      const auto ii = relim::intermediate_inequality(delta, t);
      const auto ids = relim::id_count_bound(delta, t);
      if (g.json()) {
        std::cout << Json{{"p", bound_json(p)},
                          {"amplified", bound_json(q)},
                          {"iterated", bound_json(it)},
                          {"base_threshold", bound_json(base)},
                          {"multi_round",
                           {{"threshold", bound_json(mr.threshold)},
                            {"chain_lhs_log2", static_cast<double>(mr.chain_lhs_log2)},
                            {"chain_rhs_log2", static_cast<double>(mr.chain_rhs_log2)},
                            {"chain_holds", mr.chain_holds}}},
                          {"intermediate", {{"holds", ii.holds}}},
                          {"id_count",
                           {{"neighborhood_log2", static_cast<double>(ids.neighborhood_log2)},
                            {"n_log2", static_cast<double>(ids.n_log2)},
                            {"neighborhood_below_n", ids.neighborhood_below_n}}}}
                         .dump(2)
                  << '\n';
      } else {
        auto row = [](const std::string& name, const relim::ErrorBound& b) {
          std::cout << std::left << std::setw(28) << name << fmt_log2(b.log2);
          for (const auto& f : b.flags) std::cout << "  [" << f << "]";
          std::cout << '\n';
        };
        std::cout << "D = " << delta << ", T = " << t << '\n';
        row("p", p);
        row("one round (5D p^(1/(D+1)))", q);
        row("T rounds, closed form", it);
        row("base threshold D^-D", base);
        row("threshold 2^-(D^(2T+2))", mr.threshold);
        std::cout << std::left << std::setw(28) << "chain inequality" << "log2 lhs "
                  << static_cast<double>(mr.chain_lhs_log2) << " vs rhs "
                  << static_cast<double>(mr.chain_rhs_log2) << ": "
                  << (mr.chain_holds ? "holds" : "fails") << '\n';
        std::cout << std::left << std::setw(28) << "D^(2T+2) < 2^(sqrt(D)lg(sqrt(D))/3)"
                  << (ii.holds ? "holds" : "fails") << '\n';
      }
      return kOk;
    }
  } catch (const relim::Cancelled& e) {
    std::cerr << "cancelled\n";
    return kVerifyFailed;
  } catch (const std::exception& e) {
    if (g.json()) {
      std::cerr << Json{{"error", e.what()}}.dump() << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return kUsage;
  }
  return kUsage;
}
