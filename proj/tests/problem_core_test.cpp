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

#include <random>
#include <set>

#include "relim/json_io.hpp"
#include "relim/mm_family.hpp"
#include "relim/parse.hpp"
#include "relim/problem.hpp"
#include "relim/relaxation.hpp"
#include "relim/sim/oracles.hpp"
#include "relim/zero_round.hpp"

namespace relim {
namespace {

constexpr const char* kMm3 = "white: M O O | P P P\nblack: M [PO] [PO] | O O O";

std::set<Word> expansion(const Constraint& c) {
  auto w = expand(c);
  return {w.begin(), w.end()};
}

/// Random constraint over `n` labels, built from condensed configurations.
Constraint random_constraint(std::mt19937_64& rng, int n, int degree) {
  std::vector<Configuration> confs;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int c = 0; c < count; ++c) {
    std::vector<Group> gs;
    int left = degree;
    while (left > 0) {
      const int exp = 1 + static_cast<int>(rng() % left);
      LabelSet m(static_cast<std::uint32_t>(1 + rng() % ((1u << n) - 1)));
      gs.push_back({m, exp});
      left -= exp;
    }
    confs.emplace_back(std::move(gs));
  }
  return Constraint(degree, std::move(confs));
}

Problem random_problem(std::mt19937_64& rng, int n, int dw, int db) {
  Problem p;
  for (int i = 0; i < n; ++i) p.alphabet.push_back(std::string(1, static_cast<char>('A' + i)));
  p.active = random_constraint(rng, n, dw);
  p.passive = random_constraint(rng, n, db);
  return p;
}

TEST(ParseTest, MaximalMatchingText) {
  Problem p = parse_problem(kMm3);
  EXPECT_EQ(p.alphabet, (std::vector<std::string>{"M", "O", "P"}));
  EXPECT_EQ(p.active.degree(), 3);
  EXPECT_EQ(p.passive.degree(), 3);
  EXPECT_EQ(p.active.size(), 2u);
  EXPECT_EQ(p.passive.size(), 2u);
}

TEST(ParseTest, LabelsLineFixesIds) {
  Problem p = parse_problem("labels: M P O\nwhite: M O^2 | P^3\nblack: M [PO]^2 | O^3");
  EXPECT_EQ(p.alphabet, (std::vector<std::string>{"M", "P", "O"}));
  EXPECT_TRUE(p.same_as(make_pi({3, 0, 0})));
}

TEST(ParseTest, MinimalProblem) {
  Problem p = parse_problem("white: A\nblack: A");
  EXPECT_EQ(p.alphabet_size(), 1);
  EXPECT_EQ(p.active.degree(), 1);
  EXPECT_EQ(p.passive.degree(), 1);
}

TEST(ParseTest, ZeroExponentIsRejected) {
  EXPECT_THROW(parse_problem("white: M O^2 [PO]^0\nblack: M O^2"), ParseError);
}

TEST(ParseTest, ErrorsCarryPosition) {
  try {
    parse_problem("white: M O\nblack: M [PO");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(ParseTest, DegreeMismatchAcrossConfigurations) {
  EXPECT_THROW(parse_problem("white: M O | P\nblack: M O"), DegreeMismatch);
}

TEST(ParseTest, UnknownLabelWithFixedAlphabet) {
  EXPECT_THROW(parse_problem("labels: A B\nwhite: A C\nblack: A B"), UnknownLabel);
}

TEST(ParseTest, FormatRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Problem p = random_problem(rng, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4),
                               1 + static_cast<int>(rng() % 4));
    Problem q = parse_problem(format_problem(p));
    EXPECT_TRUE(q.same_as(p)) << format_problem(p);
  }
  for (int d = 1; d <= 7; ++d) {
    for (int x = 0; x < d; ++x) {
      for (int y = 0; x + y < d; ++y) {
        Problem p = make_pi({d, x, y});
        EXPECT_TRUE(parse_problem(format_problem(p)).same_as(p));
      }
    }
  }
}

TEST(ExpandTest, GroupedBlackSide) {
  Problem p = make_pi({3, 0, 0});
  const Label M = p.label("M"), P = p.label("P"), O = p.label("O");
  Configuration c({{LabelSet::single(M), 1}, {LabelSet::single(P) | LabelSet::single(O), 2}});
  auto words = expand(c);
  std::set<Word> got(words.begin(), words.end());
  std::set<Word> want{make_word({M, P, P}), make_word({M, P, O}), make_word({M, O, O})};
  EXPECT_EQ(got, want);
}

TEST(ExpandTest, SingletonGroup) {
  Configuration c({{LabelSet::single(2), 3}});
  EXPECT_EQ(expand(c), (std::vector<Word>{{2, 2, 2}}));
}

TEST(ExpandTest, TwoByTwoChoices) {
  // [MX][PO] with M=0, P=1, O=2, X=3.
  Configuration c({{LabelSet(0b1001), 1}, {LabelSet(0b0110), 1}});
  auto words = expand(c);
  std::set<Word> got(words.begin(), words.end());
  std::set<Word> want{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(got, want);
}

TEST(MemberTest, MaximalMatchingWords) {
  Problem p = make_pi({3, 0, 0});
  EXPECT_TRUE(member(p.passive, p.word({"M", "P", "O"})));
  EXPECT_FALSE(member(p.passive, p.word({"M", "M", "O"})));
  EXPECT_TRUE(member(p.active, p.word({"P", "P", "P"})));
  EXPECT_THROW(member(p.active, p.word({"P", "P"})), DegreeMismatch);
}

TEST(MemberTest, AgreesWithExpansionExhaustively) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int d = 1 + static_cast<int>(rng() % 4);
    Constraint c = random_constraint(rng, n, d);
    const auto words = expansion(c);
    std::vector<Label> all;
    for (int l = 0; l < n; ++l) all.push_back(static_cast<Label>(l));
    for_each_multiset(all, d, [&](const Word& w) {
      EXPECT_EQ(member(c, w), words.count(w) > 0);
    });
  }
}

TEST(ConstraintTest, CanonicalizationIsIdempotent) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Constraint c = random_constraint(rng, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4));
    Constraint again(c.degree(), c.configurations());
    EXPECT_EQ(again, c);
    EXPECT_EQ(expansion(again), expansion(c));
  }
}

TEST(ConstraintTest, ContainedConfigurationsAreDropped) {
  Problem p = parse_problem("white: A B | A A | [AB] B\nblack: A B");
  EXPECT_EQ(p.active.size(), 2u);
  EXPECT_EQ(expansion(p.active).size(), 3u);
}

TEST(JsonTest, RoundTripAndHash) {
  Problem p = make_pi({7, 1, 1});
  Json j = to_json(p);
  Problem q = problem_from_json(j);
  EXPECT_TRUE(q.same_as(p));
  EXPECT_EQ(problem_hash(q), problem_hash(p));
  EXPECT_EQ(problem_hash(p).size(), 64u);
  q.meta = "other note";
  EXPECT_EQ(problem_hash(q), problem_hash(p));
}

TEST(JsonTest, RejectsMalformedInput) {
  EXPECT_THROW(problem_from_json(Json::parse(R"({"alphabet":["A"]})")), InvalidArgument);
  EXPECT_THROW(problem_from_json(Json::parse(
                   R"({"alphabet":["A"],"active":{"degree":1,"confs":[[{"members":["B"],"exp":1}]]},)"
                   R"("passive":{"degree":1,"confs":[[{"members":["A"],"exp":1}]]}})")),
               Error);
}

TEST(RelaxationTest, IdentityIsARelaxation) {
  Problem p = make_pi({4, 1, 0});
  EXPECT_TRUE(relaxation_check(p, p, LabelMap::identity(p.alphabet_size())).ok);
}

TEST(RelaxationTest, PassiveSideGrowsAlongTheFamily) {
  // Identity on {M, P, O, X} from the (7,1,1) black side into the (7,2,2) one.
  Problem a = make_pi({7, 1, 1});
  Problem b = make_pi({7, 2, 2});
  EXPECT_TRUE(constraint_relaxes(a.passive, b.passive, LabelMap::identity(4)));
  EXPECT_FALSE(constraint_relaxes(b.passive, a.passive, LabelMap::identity(4)));
}

TEST(RelaxationTest, CollapsingMapWithoutTargetWordFails) {
  Problem from = parse_problem("white: A B\nblack: A B");
  Problem to = parse_problem("white: C D\nblack: C D");
  LabelMap collapse = LabelMap::total({0, 0});
  EXPECT_FALSE(relaxation_check(from, to, collapse, RelaxMode::kMapOnly).ok);
  EXPECT_TRUE(relaxation_check(from, to, LabelMap::total({0, 1}), RelaxMode::kMapOnly).ok);
}

TEST(RelaxationTest, PartialMapFailsInMapOnlyMode) {
  Problem p = make_pi({3, 0, 0});
  LabelMap partial;
  partial.image = {Label{0}, std::nullopt, Label{2}};
  RelaxationReport r = relaxation_check(p, p, partial, RelaxMode::kMapOnly);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.failure.find("active word"), std::string::npos);
  LabelMap short_map;
  short_map.image = {Label{0}};
  EXPECT_THROW(relaxation_check(p, p, short_map, RelaxMode::kMapOnly), InvalidLabelMap);
}

TEST(RelaxationTest, ReflexiveAndTransitiveOnRandomProblems) {
  std::mt19937_64 rng(23);
  int composed = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int dw = 1 + static_cast<int>(rng() % 3);
    const int db = 1 + static_cast<int>(rng() % 3);
    Problem a = random_problem(rng, n, dw, db);
    Problem b = random_problem(rng, n, dw, db);
    Problem c = random_problem(rng, n, dw, db);
    EXPECT_TRUE(relaxation_check(a, a, LabelMap::identity(n), RelaxMode::kMapOnly).ok);
    std::vector<Label> f(n), g(n);
    for (auto& v : f) v = static_cast<Label>(rng() % n);
    for (auto& v : g) v = static_cast<Label>(rng() % n);
    const LabelMap F = LabelMap::total(f), G = LabelMap::total(g);
    if (relaxation_check(a, b, F, RelaxMode::kMapOnly).ok &&
        relaxation_check(b, c, G, RelaxMode::kMapOnly).ok) {
      ++composed;
      EXPECT_TRUE(relaxation_check(a, c, F.then(G), RelaxMode::kMapOnly).ok);
    }
  }
  EXPECT_GT(composed, 0);
}

TEST(ZeroRoundTest, BaseCaseProblemIsNotSolvable) {
  ZeroRoundResult z = zero_round_solvable(make_pi({4, 1, 1}), Side::kActive);
  EXPECT_FALSE(z.solvable);
  EXPECT_FALSE(z.refutations.empty());
}

TEST(ZeroRoundTest, SingleLabelProblemIsSolvable) {
  Problem p = parse_problem("white: O^4\nblack: O^4");
  ZeroRoundResult z = zero_round_solvable(p, Side::kActive);
  ASSERT_TRUE(z.solvable);
  EXPECT_EQ(*z.witness, p.word({"O", "O", "O", "O"}));
}

TEST(ZeroRoundTest, MaximalMatchingAtFiveRefutesBothWords) {
  Problem p = make_pi({5, 0, 0});
  ZeroRoundResult z = zero_round_solvable(p, Side::kActive);
  ASSERT_FALSE(z.solvable);
  ASSERT_EQ(z.refutations.size(), 2u);
  for (const auto& r : z.refutations) EXPECT_FALSE(member(p.passive, r.adversarial));
  std::set<Word> adversarial;
  for (const auto& r : z.refutations) adversarial.insert(r.adversarial);
  EXPECT_TRUE(adversarial.count(p.word({"M", "M", "M", "M", "M"})) ||
              adversarial.count(p.word({"M", "M", "M", "M", "O"})));
  EXPECT_TRUE(adversarial.count(p.word({"P", "P", "P", "P", "P"})));
}

TEST(ZeroRoundTest, AgreesWithBruteForceOnSmallProblems) {
  std::mt19937_64 rng(29);
  int solvable = 0;
  for (int i = 0; i < 1500; ++i) {
    Problem p = random_problem(rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                               1 + static_cast<int>(rng() % 3));
    const bool want = sim::brute_force_zero_round(p);
    solvable += want;
    EXPECT_EQ(zero_round_solvable(p, Side::kActive).solvable, want) << format_problem(p);
  }
  EXPECT_GT(solvable, 0);
  EXPECT_LT(solvable, 1500);
}

TEST(ValidateTest, RejectsBadNames) {
  Problem p = make_pi({2, 0, 0});
  p.alphabet[0] = "A B";
  EXPECT_THROW(validate(p), InvalidArgument);
  EXPECT_FALSE(valid_label_name("[x]"));
  EXPECT_TRUE(valid_label_name("<M,O>"));
}

}  // namespace
}  // namespace relim
