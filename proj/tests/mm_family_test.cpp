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

#include "relim/certificate_verifier.hpp"
#include "relim/merge.hpp"
#include "relim/mm_family.hpp"
#include "relim/parse.hpp"
#include "relim/zero_round.hpp"

namespace relim {
namespace {

TEST(MakePiTest, MaximalMatchingAtThree) {
  Problem expected = parse_problem("white: M O^2 | P^3\nblack: M [P O]^2 | O^3");
  Problem p = make_pi({3, 0, 0});
  EXPECT_TRUE(equivalent(p, expected).has_value()) << format_problem(p);
  EXPECT_FALSE(p.find("X").has_value());
}

TEST(MakePiTest, SevenOneOne) {
  Problem expected = parse_problem(
      "white: M O^5 X | P^5 O X\n"
      "black: [M X] [P O X]^5 [M P O X] | [O X]^5 [P O X] [M P O X]");
  Problem p = make_pi({7, 1, 1});
  EXPECT_TRUE(equivalent(p, expected).has_value()) << format_problem(p);
}

TEST(MakePiTest, DegreeOne) {
  Problem expected = parse_problem("white: M | P\nblack: M | O");
  EXPECT_TRUE(equivalent(make_pi({1, 0, 0}), expected).has_value());
}

TEST(MakePiTest, InvalidParamsThrow) {
  EXPECT_THROW(make_pi({3, 2, 2}), InvalidArgument);
  EXPECT_THROW(make_pi({0, 0, 0}), InvalidArgument);
  EXPECT_THROW(make_pi({3, -1, 0}), InvalidArgument);
}

TEST(MakePiTest, MatchesIndependentEncoding) {
  for (int d = 1; d <= 8; ++d) {
    Problem ref = verify::mm_problem(d);
    EXPECT_TRUE(make_pi({d, 0, 0}).same_as(ref)) << d;
  }
}

TEST(MakePiTest, PassiveSideGrowsAlongTheStep) {
  for (int d = 1; d <= 8; ++d) {
    for (int x = 0; x <= d; ++x) {
      for (int y = 0; x + y <= d; ++y) {
        const FamilyParams f{d, x, y};
        const FamilyParams g = param_step(f);
        if (!g.valid()) continue;
        Problem a = make_pi(f), b = make_pi(g);
        for (const Word& w : expand(a.passive)) {
          Word mapped;
          for (Label l : w) mapped.push_back(b.label(a.alphabet[l]));
          ASSERT_TRUE(member(b.passive, make_word(mapped)))
              << f.to_string() << " " << format_word(a, w);
        }
      }
    }
  }
}

TEST(ParamStepTest, SingleSteps) {
  EXPECT_EQ(param_step({6, 0, 0}), (FamilyParams{6, 1, 0}));
  EXPECT_EQ(param_step({6, 1, 0}), (FamilyParams{6, 2, 1}));
}

TEST(ParamStepTest, ClosedFormUpToHundredSteps) {
  for (int x = 0; x <= 3; ++x) {
    for (int y = 0; y <= 3; ++y) {
      for (int t = 0; t <= 100; ++t) {
        const FamilyParams f = param_steps({1'000'000, x, y}, t);
        EXPECT_EQ(f.x, x + t);
        EXPECT_EQ(2 * f.y, 2 * y + t * (2 * x + t - 1)) << x << " " << y << " " << t;
      }
    }
  }
}

TEST(StepCertificationTest, SevenOneOneReproducesTheTable) {
  LemmaReport r = certify_lemma({7, 1, 1});
  ASSERT_TRUE(r.ok) << r.failure;
  EXPECT_TRUE(r.hypothesis);
  const Problem& sp = r.speedup.problem;
  auto image = [&](const std::string& name) {
    auto l = r.mapping->map.image.at(sp.label(name));
    return l ? r.target.alphabet[*l] : std::string("-");
  };
  EXPECT_EQ(image("<M,X>"), "M");
  EXPECT_EQ(image("<O,X>"), "P");
  EXPECT_EQ(image("<P,O,X>"), "O");
  EXPECT_EQ(image("<M,P,O,X>"), "X");
}

TEST(StepCertificationTest, MaximalMatchingAtThree) {
  LemmaReport r = certify_lemma({3, 0, 0});
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.next, (FamilyParams{3, 1, 0}));
  EXPECT_EQ(verify::check_speedup(r.source, r.speedup.problem, r.speedup.dictionary), "");
}

TEST(StepCertificationTest, HypothesisViolationIsReported) {
  LemmaReport r = certify_lemma({2, 1, 0});
  EXPECT_FALSE(r.hypothesis);
}

TEST(StepCertificationTest, SmallGrid) {
  for (int d = 2; d <= 5; ++d) {
    for (int x = 0; 2 * x + 1 <= d; ++x) {
      for (int y = 0; 2 * x + y + 1 <= d && x + y <= d - 1; ++y) {
        LemmaReport r = certify_lemma({d, x, y});
        EXPECT_TRUE(r.ok) << r.params.to_string() << " " << r.failure;
      }
    }
  }
}

TEST(BaseCaseTest, NotZeroRoundSolvable) {
  for (int d = 2; d <= 8; ++d) {
    for (int x = 0; x <= d - 2; ++x) {
      const FamilyParams f{d, x, d - 2 - x};
      EXPECT_FALSE(zero_round_solvable(make_pi(f), Side::kActive).solvable) << f.to_string();
      EXPECT_EQ(verify::check_zero_round_refuted(make_pi(f)), "") << f.to_string();
    }
  }
}

TEST(KMatchingParamsTest, Examples) {
  auto a = k_matching_lower_bound_params(16);
  EXPECT_EQ(a.x, 4);
  EXPECT_DOUBLE_EQ(a.t_threshold, 0.25);
  auto b = k_matching_lower_bound_params(256);
  EXPECT_EQ(b.x, 16);
  EXPECT_DOUBLE_EQ(b.t_threshold, 1.0);
  auto c = k_matching_lower_bound_params(65536);
  EXPECT_EQ(c.x, 256);
  EXPECT_DOUBLE_EQ(c.t_threshold, 16.0);
  EXPECT_EQ(k_matching_lower_bound_params(15).x, 3);
  EXPECT_THROW(k_matching_lower_bound_params(0), InvalidArgument);
}

}  // namespace
}  // namespace relim
