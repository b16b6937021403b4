// Copyright 2026 The meqlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "meq/verifier.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.h"
#include "meq/constructions.h"
#include "meq/errors.h"
#include "meq/simulate.h"
#include "oracles.h"

namespace meq {
namespace {

TableProtocol WithSymbol(const TableProtocol& t, std::size_t link, int x,
                         Symbol s) {
  std::vector<Link> links = t.links();
  links[link].symbols[x - 1] = s;
  return TableProtocol::Create(t.n(), t.M(), links);
}

// Checks the Verdict invariant: replaying the counterexample reproduces the
// reported decisions and they violate the contract.
void ExpectReplayableAd(const Verdict& v, const testing::DecisionOracle& d) {
  ASSERT_FALSE(v.ok);
  ASSERT_TRUE(v.counterexample.has_value());
  const auto& ce = *v.counterexample;
  const std::vector<int> x(ce.input.values().begin(), ce.input.values().end());
  EXPECT_EQ(d(x), ce.decisions);
  const bool silent = std::all_of(ce.decisions.begin(), ce.decisions.end(),
                                  [](int b) { return b == 0; });
  EXPECT_EQ(silent, EqOracle(ce.input) == 1);
}

TEST(VerifyAdTest, Table36Solves) {
  const Verdict v = VerifyAnyoneDetects(Table36());
  EXPECT_TRUE(v.ok);
  EXPECT_FALSE(v.counterexample.has_value());
  EXPECT_EQ(v.vectors_checked, 216u);
  EXPECT_TRUE(VerifyAnyoneDetects(TableToGeneral(Table36())).ok);
}

TEST(VerifyAdTest, StarSolves) {
  EXPECT_TRUE(VerifyAnyoneDetects(StarProtocol(4, 3)).ok);
  EXPECT_TRUE(VerifyAnyoneDetects(StarProtocol(2, 1)).ok);
}

TEST(VerifyAdTest, MutatedTable36FailsOnValuesOneAndFour) {
  // s_BC(4) = 1 = s_BC(1) becomes 2 = s_BC(2).
  const TableProtocol bad = WithSymbol(Table36(), 2, 4, 2);
  const Verdict v = VerifyAnyoneDetects(bad);
  ExpectReplayableAd(v, testing::DecisionsOf(bad));
  const auto oracle = testing::FirstAdViolation(3, 6, testing::DecisionsOf(bad));
  ASSERT_TRUE(oracle.has_value());
  const auto values = v.counterexample->input.values();
  EXPECT_EQ(std::vector<int>(values.begin(), values.end()), *oracle);
  // Frozen from the brute-force scan: the only silent unequal vectors are
  // (3,4,2), (4,4,5) and (5,5,4), all involving the mutated value 4.
  EXPECT_EQ(*oracle, (std::vector<int>{3, 4, 2}));
}

TEST(VerifyAdTest, AgreesWithBruteForceOnRandomProtocols) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int M = 2 + trial % 4;
    TableProtocol t = testing::RandomCorrectTable(rng, M);
    if (trial % 2 == 1) {
      // Random single-symbol corruption; may or may not break correctness.
      std::vector<Link> links = t.links();
      std::uniform_int_distribution<int> li(0, 2), xi(1, M);
      Link& l = links[li(rng)];
      l.symbols[xi(rng) - 1] = l.symbols[xi(rng) - 1];
      for (Link& k : links) k.symbols = Tighten(k.symbols);
      t = TableProtocol::Create(3, M, links);
    }
    const auto oracle = testing::FirstAdViolation(3, M, testing::DecisionsOf(t));
    const Verdict v = VerifyAnyoneDetects(t);
    ASSERT_EQ(v.ok, !oracle.has_value()) << "trial " << trial;
    if (!v.ok) {
      const auto values = v.counterexample->input.values();
      EXPECT_EQ(std::vector<int>(values.begin(), values.end()), *oracle);
      ExpectReplayableAd(v, testing::DecisionsOf(t));
    }
    // General route agrees with the table route.
    const Verdict g = VerifyAnyoneDetects(TableToGeneral(t));
    EXPECT_EQ(g.ok, v.ok);
    if (!v.ok) EXPECT_EQ(g.counterexample->input, v.counterexample->input);
  }
}

TEST(VerifyAdTest, ParallelShardsAreDeterministic) {
  const TableProtocol bad = WithSymbol(Table36(), 2, 4, 2);
  const Verdict one = VerifyAnyoneDetects(bad, {kDefaultEnumerationBudget, 1});
  for (unsigned workers : {2u, 3u, 6u, 16u}) {
    const Verdict many =
        VerifyAnyoneDetects(bad, {kDefaultEnumerationBudget, workers});
    EXPECT_EQ(many.ok, one.ok);
    EXPECT_EQ(many.counterexample->input, one.counterexample->input);
    EXPECT_EQ(many.counterexample->decisions, one.counterexample->decisions);
    EXPECT_EQ(many.vectors_checked, one.vectors_checked);
  }
  EXPECT_TRUE(VerifyAnyoneDetects(Table36(), {kDefaultEnumerationBudget, 4}).ok);
}

TEST(VerifyAdTest, BudgetExceededIsExplicit) {
  EXPECT_THROW(VerifyAnyoneDetects(Table36(), {215, 0}), BudgetExceeded);
  EXPECT_NO_THROW(VerifyAnyoneDetects(Table36(), {216, 0}));
}

TEST(VerifyCdTest, StarDetectsCentrally) {
  EXPECT_TRUE(VerifyCentralizedDetect(StarProtocol(3, 6)).ok);
  EXPECT_TRUE(VerifyCentralizedDetect(StarProtocol(3, 6), 3).ok);
  EXPECT_FALSE(VerifyCentralizedDetect(StarProtocol(3, 6), 2).ok);
}

TEST(VerifyCdTest, Table36FailsWhereOnlyBDetects) {
  const TableProtocol t = Table36();
  const Verdict v = VerifyCentralizedDetect(t, 3);
  ASSERT_FALSE(v.ok);
  const auto oracle =
      testing::FirstCdViolation(3, 6, 3, testing::DecisionsOf(t));
  ASSERT_TRUE(oracle.has_value());
  // Frozen from the brute-force scan above.
  EXPECT_EQ(*oracle, (std::vector<int>{1, 3, 6}));
  EXPECT_EQ(v.counterexample->input, InputVector(6, {1, 3, 6}));
  EXPECT_EQ(v.counterexample->decisions, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(v.vectors_checked, 2u * 6u + 6u);
}

TEST(VerifyCdTest, WrappedTable36Passes) {
  EXPECT_TRUE(VerifyCentralizedDetect(CdWrapper(Table36()), 3).ok);
}

TEST(VerifyCdTest, RejectsBadDetector) {
  EXPECT_THROW(VerifyCentralizedDetect(Table36(), 4), InvalidArgument);
  EXPECT_THROW(VerifyCentralizedDetect(Table36(), 0), InvalidArgument);
}

TEST(VerifyCdTest, CentralizedImpliesAnyone) {
  std::mt19937_64 rng(5);
  int centralized = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int M = 2 + trial % 3;
    const TableProtocol t = testing::RandomCorrectTable(rng, M);
    const GeneralProtocol w = CdWrapper(t);
    for (const auto& candidate : {TableToGeneral(t), w}) {
      if (VerifyCentralizedDetect(candidate).ok) {
        ++centralized;
        EXPECT_TRUE(VerifyAnyoneDetects(candidate).ok);
      }
    }
  }
  EXPECT_GE(centralized, 40);
}

TEST(BoundsTest, FoolingLowerBound) {
  EXPECT_DOUBLE_EQ(FoolingLowerBound(3, 4), 3.0);
  for (int k = 0; k < 10; ++k) {
    EXPECT_DOUBLE_EQ(FoolingLowerBound(2, 1 << k), k);
  }
  EXPECT_NEAR(FoolingLowerBound(3, 6), 1.5 * std::log2(6.0), 1e-12);
  EXPECT_NEAR(FoolingLowerBound(3, 6), 3.877, 5e-4);
  EXPECT_THROW(FoolingLowerBound(1, 4), InvalidArgument);
}

TEST(BoundsTest, TrivialUpperBound) {
  for (int k = 0; k < 10; ++k) {
    EXPECT_DOUBLE_EQ(TrivialUpperBound(3, 1 << k), 2.0 * k);
  }
  EXPECT_DOUBLE_EQ(TrivialUpperBound(2, 1), 0.0);
  EXPECT_DOUBLE_EQ(TrivialUpperBound(5, 8), 12.0);
  EXPECT_THROW(TrivialUpperBound(2, 0), InvalidArgument);
}

TEST(BoundsTest, StarMeetsUpperBoundExactly) {
  for (int n = 2; n <= 5; ++n) {
    for (int M = 1; M <= 6; ++M) {
      EXPECT_NEAR(ComplexityOf(StarProtocol(n, M)).bits, TrivialUpperBound(n, M),
                  1e-12);
    }
  }
}

}  // namespace
}  // namespace meq
