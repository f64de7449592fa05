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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stop_token>

#include "relim/certificate_verifier.hpp"
#include "relim/iterate.hpp"
#include "relim/merge.hpp"
#include "relim/mm_family.hpp"
#include "relim/parse.hpp"
#include "relim/relaxation_search.hpp"
#include "relim/sim/oracles.hpp"
#include "relim/speedup.hpp"
#include "relim/strength_order.hpp"
#include "relim/zero_round.hpp"

namespace relim {
namespace {

Problem random_plain_problem(std::mt19937_64& rng, int n, int dw, int db) {
  Problem p;
  for (int i = 0; i < n; ++i) p.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<Label> all;
  for (int i = 0; i < n; ++i) all.push_back(static_cast<Label>(i));
  auto side = [&](int d) {
    std::vector<Configuration> confs;
    for_each_multiset(all, d, [&](const Word& w) {
      if (rng() % 2) confs.push_back(Configuration::from_word(w));
    });
    if (confs.empty()) confs.push_back(Configuration::from_word(Word(d, 0)));
    return Constraint(d, std::move(confs));
  };
  p.active = side(dw);
  p.passive = side(db);
  return p;
}

std::vector<LabelSet> family_of(const SpeedupResult& r, const Configuration& c) {
  std::vector<LabelSet> f;
  for (const Group& g : c.groups()) {
    for (int k = 0; k < g.exp; ++k) f.push_back(r.dictionary[g.members.lowest()]);
  }
  std::sort(f.begin(), f.end());
  return f;
}

TEST(StrengthOrderTest, FamilyPassiveSide) {
  for (auto [d, x, y] : {std::tuple{7, 1, 1}, {5, 2, 0}, {6, 1, 2}}) {
    Problem p = make_pi({d, x, y});
    const LabelPoset po = strength_order(p, Side::kPassive);
    const Label M = p.label("M"), P = p.label("P"), O = p.label("O"), X = p.label("X");
    EXPECT_TRUE(po.less(P, O));
    EXPECT_TRUE(po.less(O, X));
    EXPECT_TRUE(po.less(P, X));
    EXPECT_TRUE(po.less(M, X));
    EXPECT_FALSE(po.leq(M, P) || po.leq(P, M) || po.leq(M, O) || po.leq(O, M));
    EXPECT_TRUE(po.reflexive());
    EXPECT_TRUE(po.transitive());
  }
}

TEST(StrengthOrderTest, SingleLabel) {
  Problem p = parse_problem("white: A^3\nblack: A^3");
  const LabelPoset po = strength_order(p, Side::kPassive);
  EXPECT_EQ(po.size(), 1);
  EXPECT_TRUE(po.leq(0, 0));
}

TEST(StrengthOrderTest, MaximalMatchingAtTwoHasOnlyPBelowO) {
  Problem p = make_pi({2, 0, 0});
  const LabelPoset po = strength_order(p, Side::kPassive);
  const Label M = p.label("M"), P = p.label("P"), O = p.label("O");
  EXPECT_TRUE(po.less(P, O));
  for (Label a : {M, P, O}) {
    for (Label b : {M, P, O}) {
      if (a == b || (a == P && b == O)) continue;
      EXPECT_FALSE(po.leq(a, b)) << int(a) << " " << int(b);
    }
  }
}

TEST(SpeedupTest, MaximalMatchingAtTwo) {
  Problem p = make_pi({2, 0, 0});
  SpeedupResult r = speedup(p);
  const Label M = p.label("M"), P = p.label("P"), O = p.label("O");
  const LabelSet sM = LabelSet::single(M), sO = LabelSet::single(O);
  const LabelSet sPO = LabelSet::single(P) | sO, sMO = sM | sO;

  std::set<LabelSet> alphabet(r.dictionary.begin(), r.dictionary.end());
  EXPECT_EQ(alphabet, (std::set<LabelSet>{sM, sPO, sMO, sO}));
  std::set<std::vector<LabelSet>> families;
  for (const Configuration& c : r.problem.active.configurations()) families.insert(family_of(r, c));
  auto sorted = [](std::vector<LabelSet> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(families, (std::set<std::vector<LabelSet>>{sorted({sM, sPO}), sorted({sMO, sO})}));

  auto id = [&](LabelSet s) {
    return static_cast<Label>(std::find(r.dictionary.begin(), r.dictionary.end(), s) -
                              r.dictionary.begin());
  };
  auto in_passive = [&](LabelSet a, LabelSet b) {
    return member(r.problem.passive, make_word({id(a), id(b)}));
  };
  EXPECT_TRUE(in_passive(sM, sPO));
  for (LabelSet s : {sM, sPO, sMO, sO}) EXPECT_TRUE(in_passive(sMO, s));
  EXPECT_TRUE(in_passive(sPO, sPO));
  EXPECT_FALSE(in_passive(sM, sM));
  EXPECT_FALSE(in_passive(sO, sO));
  EXPECT_FALSE(in_passive(sPO, sO));
}

TEST(SpeedupTest, SetLabelNamesListMembers) {
  Problem p = make_pi({7, 1, 1});
  LabelSet s;
  s.insert(p.label("M"));
  s.insert(p.label("O"));
  s.insert(p.label("X"));
  EXPECT_EQ(set_label_name(p, s), "<M,O,X>");
}

TEST(SpeedupTest, SingleLabelFixedPoint) {
  Problem p = parse_problem("white: A^3\nblack: A^3");
  SpeedupResult r = speedup(p);
  EXPECT_EQ(r.problem.alphabet_size(), 1);
  EXPECT_TRUE(equivalent(r.problem, p, EquivalenceMode::kExhaustive).has_value());
}

TEST(SpeedupTest, LabelCountTrajectory) {
  for (int delta : {2, 3}) {
    Problem p = make_pi({delta, 0, 0});
    Problem one = simplify(speedup(p).problem).problem;
    EXPECT_EQ(one.alphabet_size(), 4) << delta;
    Problem two = simplify(speedup(one).problem).problem;
    EXPECT_EQ(two.alphabet_size(), 6) << delta;
  }
}

TEST(SpeedupTest, AgreesWithNaiveEnumeration) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 150; ++i) {
    Problem p = random_plain_problem(rng, 1 + static_cast<int>(rng() % 3),
                                     1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
    SpeedupResult r = speedup(p);
    EXPECT_EQ(verify::check_speedup(p, r.problem, r.dictionary), "") << format_problem(p);
  }
  for (auto f : {FamilyParams{3, 0, 0}, {4, 1, 0}, {5, 1, 1}, {7, 1, 1}}) {
    Problem p = make_pi(f);
    SpeedupResult r = speedup(p);
    EXPECT_EQ(verify::check_speedup(p, r.problem, r.dictionary), "") << f.to_string();
  }
}

TEST(SpeedupTest, SetLabelsAreRightClosed) {
  Problem p = make_pi({6, 1, 2});
  SpeedupResult r = speedup(p);
  const LabelPoset po = strength_order(p, Side::kPassive);
  for (LabelSet s : r.dictionary) EXPECT_TRUE(po.is_right_closed(s));
}

TEST(SpeedupTest, ThreadCountDoesNotChangeTheResult) {
  for (auto f : {FamilyParams{5, 1, 0}, {7, 1, 1}}) {
    Problem p = make_pi(f);
    SpeedupOptions serial, parallel;
    parallel.threads = 4;
    SpeedupResult a = speedup(p, serial);
    SpeedupResult b = speedup(p, parallel);
    EXPECT_TRUE(a.problem.same_as(b.problem));
    EXPECT_EQ(a.dictionary, b.dictionary);
  }
}

TEST(SpeedupTest, AlphabetCapIsEnforced) {
  SpeedupOptions opts;
  opts.alphabet_cap = 3;
  EXPECT_THROW(speedup(make_pi({3, 0, 0}), opts), AlphabetCapExceeded);
}

TEST(SpeedupTest, StopRequestCancels) {
  std::stop_source src;
  src.request_stop();
  SpeedupOptions opts;
  opts.stop = src.get_token();
  EXPECT_THROW(speedup(make_pi({5, 1, 1}), opts), Cancelled);
}

TEST(SpeedupTest, OneRoundSolvableOriginsGiveZeroRoundOutputs) {
  std::mt19937_64 rng(43);
  int one_round_only = 0;
  for (int i = 0; i < 2000; ++i) {
    Problem p = random_plain_problem(rng, 1 + static_cast<int>(rng() % 3),
                                     1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2));
    if (!sim::one_round_white_solvable(p)) continue;
    if (!zero_round_solvable(p, Side::kActive).solvable) ++one_round_only;
    EXPECT_TRUE(zero_round_solvable(speedup(p).problem, Side::kActive).solvable)
        << format_problem(p);
  }
  EXPECT_GT(one_round_only, 0);
}

TEST(MergeTest, IdentityMapGivesEqualProblem) {
  Problem p = make_pi({4, 1, 1});
  std::vector<Label> id{0, 1, 2, 3};
  EXPECT_TRUE(merge_labels(p, id, p.alphabet).same_as(p));
}

TEST(MergeTest, MergedProblemIsARelaxation) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 3);
    Problem p = random_plain_problem(rng, n, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3));
    std::vector<Label> f(n);
    const int m = 1 + static_cast<int>(rng() % n);
    for (int k = 0; k < n; ++k) f[k] = static_cast<Label>(k < m ? k : rng() % m);
    std::vector<std::string> names(p.alphabet.begin(), p.alphabet.begin() + m);
    Problem q = merge_labels(p, f, names);
    EXPECT_TRUE(relaxation_check(p, q, LabelMap::total(f), RelaxMode::kMapOnly).ok);
  }
}

TEST(MergeTest, LabelsThatNeverMeetKeepConfigurationCount) {
  Problem p = parse_problem("white: A A | B C\nblack: A A | B C");
  auto [q, f] = identify_labels(p, {{"A", "B"}});
  EXPECT_EQ(q.alphabet, (std::vector<std::string>{"AB", "C"}));
  EXPECT_EQ(q.active.size(), p.active.size());
  EXPECT_EQ(q.passive.size(), p.passive.size());
}

TEST(MergeTest, NonTotalMapIsRejected) {
  Problem p = make_pi({3, 0, 0});
  EXPECT_THROW(merge_labels(p, {0, 1}, {"M", "P"}), InvalidLabelMap);
}

TEST(SimplifyTest, DropsUnusableLabels) {
  Problem p = parse_problem("white: A A | B B\nblack: A A | C C");
  SimplifyResult s = simplify(p);
  EXPECT_EQ(s.problem.alphabet, (std::vector<std::string>{"A"}));
  EXPECT_FALSE(s.map.image[1].has_value());
}

TEST(EquivalenceTest, FindsRenaming) {
  Problem p = make_pi({4, 1, 0});
  std::vector<Label> perm{2, 0, 3, 1};
  std::vector<std::string> names(4);
  for (int i = 0; i < 4; ++i) names[perm[i]] = "L" + std::to_string(i);
  Problem q = merge_labels(p, perm, names);
  auto g = equivalent(p, q, EquivalenceMode::kExhaustive);
  ASSERT_TRUE(g.has_value());
  EXPECT_TRUE(merge_labels(p, *g, q.alphabet).same_as(q));
}

TEST(EquivalenceTest, SizeMismatchIsAbsent) {
  EXPECT_FALSE(equivalent(make_pi({3, 0, 0}), make_pi({3, 1, 0}), EquivalenceMode::kExhaustive));
}

TEST(EquivalenceTest, HandWrittenSpeedupOfMaximalMatchingAtTwo) {
  Problem target = parse_problem(
      "white: a b | c d\n"
      "black: a b | a c | a d | b b | b c | c c | c d");
  EXPECT_TRUE(equivalent(speedup(make_pi({2, 0, 0})).problem, target, EquivalenceMode::kExhaustive));
}

TEST(EquivalenceTest, ExhaustiveModeRefusesLargeAlphabets) {
  std::string labels;
  for (int i = 0; i < 9; ++i) labels += " L" + std::to_string(i);
  Problem p = parse_problem("labels:" + labels + "\nwhite: L0\nblack: L0");
  EXPECT_THROW(equivalent(p, p, EquivalenceMode::kExhaustive), InvalidArgument);
  EXPECT_TRUE(equivalent(p, p, EquivalenceMode::kHeuristic).has_value());
}

TEST(RelaxationSearchTest, SelfMapIsIdentity) {
  Problem p = make_pi({3, 0, 0});
  auto m = find_relaxation_mapping(p, p);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->map.eliminated(), 0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(m->map.image[i], static_cast<Label>(i));
}

TEST(RelaxationSearchTest, EmptyTargetHasNoMapping) {
  Problem p = make_pi({3, 0, 0});
  Problem empty = p;
  empty.passive = Constraint(3, {});
  EXPECT_FALSE(find_relaxation_mapping(p, empty).has_value());
}

TEST(RelaxationSearchTest, BudgetIsEnforced) {
  RelaxationSearchOptions opts;
  opts.budget = 10;
  EXPECT_THROW(find_relaxation_mapping(make_pi({3, 0, 0}), make_pi({3, 1, 0}), opts),
               BudgetExceeded);
}

TEST(RelaxationSearchTest, DegreeMismatchIsAnError) {
  EXPECT_THROW(find_relaxation_mapping(make_pi({3, 0, 0}), make_pi({4, 0, 0})), DegreeMismatch);
}

TEST(IterateTest, GreedyTrajectory) {
  IterateOptions opts;
  opts.policy = MergePolicy::kGreedy;
  auto steps = iterate_speedup(make_pi({3, 0, 0}), 2, opts);
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].result.alphabet_size(), 4);
  EXPECT_EQ(steps[1].simplified.alphabet_size(), 6);
  EXPECT_LE(steps[1].result.alphabet_size(), 6);
  EXPECT_FALSE(zero_round_solvable(steps[1].result, Side::kActive).solvable);
  for (const auto& d : steps[1].merges) EXPECT_FALSE(d.reason.empty());
}

TEST(IterateTest, FixedPointComesBack) {
  Problem p = parse_problem("white: A^2\nblack: A^2");
  auto steps = iterate_speedup(p, 1);
  EXPECT_TRUE(equivalent(steps[0].result, p, EquivalenceMode::kExhaustive).has_value());
}

TEST(IterateTest, TraceRecordFields) {
  auto steps = iterate_speedup(make_pi({2, 0, 0}), 1);
  Json rec = trace_record(steps[0]);
  for (const char* key : {"step", "op", "input_hash", "output_problem", "dictionary", "merges",
                          "timings"}) {
    EXPECT_TRUE(rec.contains(key)) << key;
  }
  EXPECT_EQ(rec["input_hash"], problem_hash(make_pi({2, 0, 0})));
}

TEST(IterateTest, ManualScriptApplies) {
  IterateOptions opts;
  opts.policy = MergePolicy::kManualScript;
  auto first = iterate_speedup(make_pi({2, 0, 0}), 1);
  const auto& names = first[0].result.alphabet;
  opts.script = {{{names[0], names[1]}}};
  auto steps = iterate_speedup(make_pi({2, 0, 0}), 1, opts);
  EXPECT_EQ(steps[0].result.alphabet_size(), 3);
}

}  // namespace
}  // namespace relim
