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

// Three-node protocols as bipartite graphs.
//
// In a three-node normal-form protocol with links AB, AC and BC, each input
// value x becomes the edge (U_{s_AB(x)}, V_{s_AC(x)}) of a bipartite graph.
// Correctness forces the graph to be simple and forces s_BC to be a
// distance-2 ("strong") edge coloring, so the optimal three-node cost is the
// least |U| |V| |W| over graphs with M edges that admit a strong coloring
// with |W| colors, subject to |U||V|, |U||W|, |V||W| >= M.

#ifndef MEQ_COLORING_H_
#define MEQ_COLORING_H_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "meq/errors.h"
#include "meq/protocol.h"

namespace meq {

// Two inputs map to the same (s_AB, s_AC) pair.
class EdgeCollision : public Error {
 public:
  EdgeCollision(const std::string& what, int x, int x_prime)
      : Error(what), x_(x), x_prime_(x_prime) {}
  int x() const { return x_; }
  int x_prime() const { return x_prime_; }

 private:
  int x_;
  int x_prime_;
};

class InvalidColoring : public Error {
 public:
  using Error::Error;
};

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class BipartiteRep {
 public:
  // edges[x - 1] is the edge labelled x. Throws InvalidArgument on an
  // out-of-range endpoint, EdgeCollision on a repeated (u, v).
  static BipartiteRep Create(int u_size, int v_size, std::vector<Edge> edges);

  int u_size() const { return u_size_; }
  int v_size() const { return v_size_; }
  int M() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int x) const { return edges_.at(x - 1); }

  friend bool operator==(const BipartiteRep&, const BipartiteRep&) = default;

 private:
  BipartiteRep(int u_size, int v_size, std::vector<Edge> edges)
      : u_size_(u_size), v_size_(v_size), edges_(std::move(edges)) {}

  int u_size_;
  int v_size_;
  std::vector<Edge> edges_;
};

// Requires exactly three links 1->2, 1->3, 2->3 (any order) on n = 3.
// Throws InvalidArgument otherwise, EdgeCollision when two inputs share
// both their AB and AC symbols.
BipartiteRep ToBipartite(const TableProtocol& t);

// Unordered label pairs (x < x') whose edges share an endpoint or are both
// adjacent to a common third edge. Sorted.
std::vector<std::pair<int, int>> ConflictPairs(const BipartiteRep& g);

class ColoringInstance {
 public:
  // colors[x - 1] in 1..color_count. Throws InvalidColoring if two
  // conflicting edges share a color.
  static ColoringInstance Create(BipartiteRep graph, std::vector<int> colors,
                                 int color_count);

  const BipartiteRep& graph() const { return graph_; }
  const std::vector<int>& colors() const { return colors_; }
  int color_count() const { return color_count_; }

  friend bool operator==(const ColoringInstance&,
                         const ColoringInstance&) = default;

 private:
  ColoringInstance(BipartiteRep graph, std::vector<int> colors,
                   int color_count)
      : graph_(std::move(graph)),
        colors_(std::move(colors)),
        color_count_(color_count) {}

  BipartiteRep graph_;
  std::vector<int> colors_;
  int color_count_;
};

struct ColoringStats {
  std::uint64_t nodes = 0;  // backtracking assignments tried
};

// First-fit backtracking: edges in label order, colors ascending. Returns
// nullopt only after exhausting the search tree.
std::optional<ColoringInstance> StrongEdgeColor(const BipartiteRep& g,
                                                int color_count,
                                                ColoringStats* stats = nullptr);

// s_AB = u, s_AC = v, s_BC = color, each re-tightened.
TableProtocol ProtocolFromColoring(const ColoringInstance& c);

struct Triple {
  int a = 0;  // |U|
  int b = 0;  // |V|
  int c = 0;  // |W|
  std::uint64_t product() const {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) *
           static_cast<std::uint64_t>(c);
  }
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Triples with every entry in 1..M satisfying all three pairwise
// constraints, ordered by product, then lexicographically.
std::vector<Triple> CandidateTriples(int M);

// Canonical-form bipartite graphs with exactly M edges in an a x b grid with
// no isolated vertex, one representative per row/column permutation class.
std::vector<BipartiteRep> EnumerateGraphs(int a, int b, int M);

struct SearchOptions {
  // Cap on graphs handed to the coloring solver.
  std::uint64_t graph_budget = 50'000'000;
  int max_M = 8;
};

struct SearchResult {
  Triple triple;
  std::uint64_t product = 0;
  double bits = 0.0;
  ColoringInstance witness;
  TableProtocol protocol;        // ProtocolFromColoring(witness)
  std::vector<Triple> infeasible;  // every candidate below the optimum
  std::uint64_t graphs_examined = 0;
};

class SearchBudgetExceeded : public BudgetExceeded {
 public:
  SearchBudgetExceeded(const std::string& what, std::uint64_t required,
                       std::uint64_t budget, std::vector<Triple> frontier)
      : BudgetExceeded(what, required, budget),
        frontier_(std::move(frontier)) {}
  // Candidates not yet decided when the budget ran out, in search order.
  const std::vector<Triple>& frontier() const { return frontier_; }

 private:
  std::vector<Triple> frontier_;
};

// Exact minimum of |U||V||W| for three nodes and M inputs. The witness
// protocol is verified exhaustively before returning.
SearchResult OptimalSearch(int M, const SearchOptions& options = {});

}  // namespace meq

#endif  // MEQ_COLORING_H_
