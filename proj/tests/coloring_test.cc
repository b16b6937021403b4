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

#include "meq/coloring.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "generators.h"
#include "meq/constructions.h"
#include "meq/verifier.h"
#include "oracles.h"

namespace meq {
namespace {

std::vector<std::pair<int, int>> Sorted(std::vector<std::pair<int, int>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool Solves(const TableProtocol& t) {
  return !testing::FirstAdViolation(t.n(), t.M(), testing::DecisionsOf(t))
              .has_value();
}

TableProtocol WithLink(const TableProtocol& t, std::size_t i,
                       std::vector<Symbol> symbols) {
  std::vector<Link> links = t.links();
  links[i].symbols = Tighten(symbols);
  return TableProtocol::Create(t.n(), t.M(), links);
}

// Random simple bipartite graph with m edges on an a x b grid.
std::vector<Edge> RandomEdges(std::mt19937_64& rng, int a, int b, int m) {
  std::vector<Edge> cells;
  for (int u = 1; u <= a; ++u) {
    for (int v = 1; v <= b; ++v) cells.push_back({u, v});
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  cells.resize(m);
  return cells;
}

TEST(BipartiteTest, Table36Edges) {
  const BipartiteRep g = ToBipartite(Table36());
  EXPECT_EQ(g.u_size(), 3);
  EXPECT_EQ(g.v_size(), 3);
  EXPECT_EQ(g.M(), 6);
  EXPECT_EQ(g.edge(1), (Edge{1, 1}));
  EXPECT_EQ(g.edge(2), (Edge{1, 2}));
  EXPECT_EQ(g.edge(6), (Edge{3, 1}));
}

TEST(BipartiteTest, DiagonalNeedsOneColor) {
  // A forwards its input to both B and C; BC is constant.
  const TableProtocol t = TableProtocol::Create(
      3, 4, {{1, 2, {1, 2, 3, 4}}, {1, 3, {1, 2, 3, 4}}, {2, 3, {1, 1, 1, 1}}});
  EXPECT_TRUE(Solves(t));
  const BipartiteRep g = ToBipartite(t);
  for (int x = 1; x <= 4; ++x) EXPECT_EQ(g.edge(x), (Edge{x, x}));
  EXPECT_TRUE(ConflictPairs(g).empty());
  const auto c = StrongEdgeColor(g, 1);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->colors(), (std::vector<int>{1, 1, 1, 1}));
}

TEST(BipartiteTest, CollisionIsReportedAndBreaksCorrectness) {
  std::vector<Symbol> ac = Table36().link(1).symbols;
  ac[1] = ac[0];  // inputs 1 and 2 now share both the AB and AC symbols
  const TableProtocol bad = WithLink(Table36(), 1, ac);
  try {
    ToBipartite(bad);
    FAIL() << "expected EdgeCollision";
  } catch (const EdgeCollision& e) {
    EXPECT_EQ(e.x(), 1);
    EXPECT_EQ(e.x_prime(), 2);
  }
  const std::vector<int> fooled =
      testing::DecisionsOf(bad)(std::vector<int>{2, 1, 1});
  EXPECT_EQ(fooled, (std::vector<int>{0, 0, 0}));
  EXPECT_FALSE(VerifyAnyoneDetects(bad).ok);
}

TEST(BipartiteTest, CreateValidates) {
  EXPECT_THROW(BipartiteRep::Create(2, 2, {{1, 3}}), InvalidArgument);
  EXPECT_THROW(BipartiteRep::Create(2, 2, {{0, 1}}), InvalidArgument);
  EXPECT_THROW(BipartiteRep::Create(2, 2, {{1, 1}, {1, 1}}), EdgeCollision);
  EXPECT_THROW(ToBipartite(StarProtocol(4, 2)), InvalidArgument);
}

TEST(ConflictPairsTest, CompleteTwoByTwo) {
  const BipartiteRep g =
      BipartiteRep::Create(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  EXPECT_EQ(ConflictPairs(g).size(), 6u);
}

TEST(ConflictPairsTest, PathOfFourEdges) {
  // u1-v1-u2-v2-u3: edges 1 and 4 are three apart in the line graph.
  const BipartiteRep g =
      BipartiteRep::Create(3, 2, {{1, 1}, {2, 1}, {2, 2}, {3, 2}});
  EXPECT_EQ(ConflictPairs(g),
            (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {2, 4},
                                              {3, 4}}));
}

TEST(ConflictPairsTest, AgreesWithLineGraphBfs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = 1 + trial % 4, b = 1 + (trial / 4) % 4;
    const int m = 1 + static_cast<int>(rng() % (a * b));
    const auto edges = RandomEdges(rng, a, b, m);
    const BipartiteRep g = BipartiteRep::Create(a, b, edges);
    EXPECT_EQ(Sorted(ConflictPairs(g)), testing::ConflictPairsByBfs(edges));
  }
}

TEST(ColoringInstanceTest, Table36BcIsAValidColoring) {
  const TableProtocol t = Table36();
  const ColoringInstance c =
      ColoringInstance::Create(ToBipartite(t), t.link(2).symbols, 3);
  EXPECT_EQ(ProtocolFromColoring(c), t);
}

TEST(ColoringInstanceTest, RejectsBadColorings) {
  const BipartiteRep g = ToBipartite(Table36());
  EXPECT_THROW(ColoringInstance::Create(g, {1, 1, 3, 1, 2, 3}, 3),
               InvalidColoring);
  EXPECT_THROW(ColoringInstance::Create(g, {1, 2, 3, 1, 2, 4}, 3),
               InvalidColoring);
  EXPECT_THROW(ColoringInstance::Create(g, {1, 2, 3}, 3), InvalidColoring);
}

TEST(StrongEdgeColorTest, Table36NeedsThreeColors) {
  const BipartiteRep g = ToBipartite(Table36());
  EXPECT_FALSE(StrongEdgeColor(g, 2).has_value());
  const auto c = StrongEdgeColor(g, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(Solves(ProtocolFromColoring(*c)));
}

TEST(StrongEdgeColorTest, CompleteGridNeedsOneColorPerEdge) {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      std::vector<Edge> edges;
      for (int u = 1; u <= a; ++u) {
        for (int v = 1; v <= b; ++v) edges.push_back({u, v});
      }
      const BipartiteRep g = BipartiteRep::Create(a, b, edges);
      if (a * b > 1) EXPECT_FALSE(StrongEdgeColor(g, a * b - 1).has_value());
      EXPECT_TRUE(StrongEdgeColor(g, a * b).has_value());
    }
  }
}

TEST(StrongEdgeColorTest, AgreesWithEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int a = 1 + trial % 3, b = 1 + (trial / 3) % 4;
    const int m = 1 + static_cast<int>(rng() % std::min(a * b, 7));
    const auto edges = RandomEdges(rng, a, b, m);
    const BipartiteRep g = BipartiteRep::Create(a, b, edges);
    for (int k = 1; k <= 4; ++k) {
      ColoringStats stats;
      const auto c = StrongEdgeColor(g, k, &stats);
      EXPECT_EQ(c.has_value(), testing::StrongColorableByEnumeration(edges, k))
          << "trial " << trial << " k=" << k;
      if (c) {
        EXPECT_EQ(c->graph(), g);
        EXPECT_EQ(c->color_count(), k);
      }
    }
  }
}

TEST(StrongEdgeColorTest, ColoringYieldsCorrectProtocol) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int a = 1 + trial % 3, b = 1 + (trial / 3) % 3;
    const int m = 1 + static_cast<int>(rng() % (a * b));
    const BipartiteRep g = BipartiteRep::Create(a, b, RandomEdges(rng, a, b, m));
    const auto c = StrongEdgeColor(g, m);
    ASSERT_TRUE(c.has_value());
    const TableProtocol t = ProtocolFromColoring(*c);
    EXPECT_TRUE(Solves(t)) << "trial " << trial;
    EXPECT_EQ(ToBipartite(t).M(), m);
  }
}

TEST(StrongEdgeColorTest, RoundTripThroughProtocol) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const TableProtocol t = testing::RandomCorrectTable(rng, 2 + trial % 6);
    const BipartiteRep g = ToBipartite(t);
    const ColoringInstance c =
        ColoringInstance::Create(g, t.link(2).symbols, t.link(2).range_size());
    EXPECT_EQ(ProtocolFromColoring(c), t);
  }
}

// Every correct three-node table at M = 6 breaks when one AB/AC pair is
// merged or one conflict pair shares its BC symbol.
TEST(NecessityTest, CollisionMutationsFail) {
  std::mt19937_64 rng(37);
  std::vector<TableProtocol> bases = {Table36()};
  for (int i = 0; i < 10; ++i) bases.push_back(testing::RandomCorrectTable(rng, 6));
  for (const TableProtocol& t : bases) {
    for (int x = 1; x <= 6; ++x) {
      for (int y = 1; y <= 6; ++y) {
        if (x == y || t.link(0)(x) != t.link(0)(y)) continue;
        std::vector<Symbol> ac = t.link(1).symbols;
        ac[y - 1] = ac[x - 1];
        EXPECT_FALSE(VerifyAnyoneDetects(WithLink(t, 1, ac)).ok);
      }
    }
  }
}

TEST(NecessityTest, ConflictPairMutationsFail) {
  std::mt19937_64 rng(41);
  std::vector<TableProtocol> bases = {Table36()};
  for (int i = 0; i < 10; ++i) bases.push_back(testing::RandomCorrectTable(rng, 6));
  for (const TableProtocol& t : bases) {
    for (const auto& [x, y] : ConflictPairs(ToBipartite(t))) {
      std::vector<Symbol> bc = t.link(2).symbols;
      bc[y - 1] = bc[x - 1];
      EXPECT_FALSE(VerifyAnyoneDetects(WithLink(t, 2, bc)).ok)
          << "pair " << x << "," << y;
    }
  }
}

TEST(CandidateTriplesTest, OrderAndPairwiseConstraint) {
  const auto c = CandidateTriples(4);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.front(), (Triple{2, 2, 2}));
  for (std::size_t i = 1; i < c.size(); ++i) {
    EXPECT_TRUE(c[i - 1].product() < c[i].product() ||
                (c[i - 1].product() == c[i].product() && c[i - 1] < c[i]));
  }
  for (const Triple& t : c) {
    EXPECT_GE(t.a * t.b, 4);
    EXPECT_GE(t.a * t.c, 4);
    EXPECT_GE(t.b * t.c, 4);
    EXPECT_LE(std::max({t.a, t.b, t.c}), 4);
  }
  EXPECT_EQ(CandidateTriples(1), (std::vector<Triple>{{1, 1, 1}}));
}

std::vector<std::vector<int>> ToMatrix(const BipartiteRep& g) {
  std::vector<std::vector<int>> m(g.u_size(), std::vector<int>(g.v_size(), 0));
  for (const Edge& e : g.edges()) m[e.u - 1][e.v - 1] = 1;
  return m;
}

TEST(EnumerateGraphsTest, MatchesBruteForceIsomorphismClasses) {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 4; ++b) {
      for (int M = 1; M <= a * b; ++M) {
        std::set<std::vector<int>> expected;
        for (unsigned bits = 0; bits < (1u << (a * b)); ++bits) {
          if (std::popcount(bits) != M) continue;
          std::vector<std::vector<int>> m(a, std::vector<int>(b, 0));
          for (int i = 0; i < a * b; ++i) m[i / b][i % b] = (bits >> i) & 1u;
          bool covered = true;
          for (int i = 0; i < a; ++i) {
            covered &= std::count(m[i].begin(), m[i].end(), 1) > 0;
          }
          for (int j = 0; j < b; ++j) {
            int s = 0;
            for (int i = 0; i < a; ++i) s += m[i][j];
            covered &= s > 0;
          }
          if (covered) expected.insert(testing::BruteCanonical(m));
        }
        const auto graphs = EnumerateGraphs(a, b, M);
        std::set<std::vector<int>> got;
        for (const auto& g : graphs) {
          EXPECT_EQ(g.M(), M);
          got.insert(testing::BruteCanonical(ToMatrix(g)));
        }
        EXPECT_EQ(got.size(), graphs.size()) << a << "x" << b << " M=" << M;
        EXPECT_EQ(got, expected) << a << "x" << b << " M=" << M;
      }
    }
  }
}

TEST(OptimalSearchTest, SmallAlphabets) {
  const std::vector<std::uint64_t> products = {1, 4, 9, 16, 25, 27, 48, 60};
  for (int M = 1; M <= 8; ++M) {
    const SearchResult r = OptimalSearch(M);
    EXPECT_EQ(r.product, products[M - 1]) << "M=" << M;
    EXPECT_EQ(r.triple.product(), r.product);
    EXPECT_TRUE(Solves(r.protocol)) << "M=" << M;
    EXPECT_EQ(ComplexityOf(r.protocol).product, r.product);
    EXPECT_LE(FoolingLowerBound(3, M), r.bits + 1e-9);
    EXPECT_LE(r.bits, TrivialUpperBound(3, M) + 1e-9);
  }
}

TEST(OptimalSearchTest, FourInputs) {
  const SearchResult r = OptimalSearch(4);
  EXPECT_EQ(r.product, 16u);
  EXPECT_DOUBLE_EQ(r.bits, 4.0);
  EXPECT_EQ(r.infeasible, (std::vector<Triple>{
                              {2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}));
  // The fooling bound 3 is strictly below the optimum.
  EXPECT_DOUBLE_EQ(FoolingLowerBound(3, 4), 3.0);
}

TEST(OptimalSearchTest, SixInputs) {
  const SearchResult r = OptimalSearch(6);
  EXPECT_EQ(r.product, 27u);
  EXPECT_EQ(r.triple, (Triple{3, 3, 3}));
  EXPECT_EQ(r.infeasible,
            (std::vector<Triple>{{2, 3, 3}, {3, 2, 3}, {3, 3, 2}, {2, 3, 4},
                                 {2, 4, 3}, {3, 2, 4}, {3, 4, 2}, {4, 2, 3},
                                 {4, 3, 2}}));
  EXPECT_EQ(r.witness.graph().u_size(), 3);
  EXPECT_EQ(r.witness.color_count(), 3);
}

TEST(OptimalSearchTest, BudgetAndRange) {
  SearchOptions tight;
  tight.graph_budget = 1;
  try {
    OptimalSearch(6, tight);
    FAIL() << "expected SearchBudgetExceeded";
  } catch (const SearchBudgetExceeded& e) {
    EXPECT_FALSE(e.frontier().empty());
    EXPECT_EQ(e.budget(), 1u);
  }
  EXPECT_THROW(OptimalSearch(0), InvalidArgument);
  EXPECT_THROW(OptimalSearch(9), InvalidArgument);
}

}  // namespace
}  // namespace meq
