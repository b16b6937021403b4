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

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "meq/verifier.h"

namespace meq {
namespace {

using Mask = std::uint32_t;

const Link* FindLink(const TableProtocol& t, NodeId from, NodeId to) {
  for (const Link& l : t.links()) {
    if (l.from == from && l.to == to) return &l;
  }
  return nullptr;
}

// For each edge label (0-based), the smaller labels it conflicts with.
std::vector<std::vector<int>> EarlierConflicts(const BipartiteRep& g) {
  std::vector<std::vector<int>> earlier(g.M());
  for (const auto& [x, y] : ConflictPairs(g)) earlier[y - 1].push_back(x - 1);
  return earlier;
}

// Canonical key of a 0/1 matrix given as row masks over `cols` bits.
// Permutes the shorter side exhaustively and sorts the other.
std::vector<Mask> CanonicalKey(const std::vector<Mask>& rows, int cols) {
  const int a = static_cast<int>(rows.size());
  std::vector<Mask> best;
  if (a <= cols) {
    std::vector<int> perm(a);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Mask> columns(cols, 0);
      for (int i = 0; i < a; ++i) {
        for (int j = 0; j < cols; ++j) {
          if (rows[perm[i]] >> j & 1u) columns[j] |= Mask{1} << i;
        }
      }
      std::sort(columns.begin(), columns.end());
      if (best.empty() || columns < best) best = std::move(columns);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<int> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Mask> permuted(a, 0);
      for (int i = 0; i < a; ++i) {
        for (int j = 0; j < cols; ++j) {
          if (rows[i] >> perm[j] & 1u) permuted[i] |= Mask{1} << j;
        }
      }
      std::sort(permuted.begin(), permuted.end());
      if (best.empty() || permuted < best) best = std::move(permuted);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

BipartiteRep GraphFromKey(const std::vector<Mask>& key, int a, int b) {
  std::vector<Edge> edges;
  if (a <= b) {
    // key holds b column masks over a row bits
    for (int u = 0; u < a; ++u) {
      for (int v = 0; v < b; ++v) {
        if (key[v] >> u & 1u) edges.push_back({u + 1, v + 1});
      }
    }
  } else {
    for (int u = 0; u < a; ++u) {
      for (int v = 0; v < b; ++v) {
        if (key[u] >> v & 1u) edges.push_back({u + 1, v + 1});
      }
    }
  }
  return BipartiteRep::Create(a, b, std::move(edges));
}

// deg(u) + deg(v) - 1 edges around any edge (u, v) pairwise conflict.
int CliqueLowerBound(const BipartiteRep& g) {
  std::vector<int> du(g.u_size() + 1, 0), dv(g.v_size() + 1, 0);
  for (const Edge& e : g.edges()) {
    ++du[e.u];
    ++dv[e.v];
  }
  int bound = 0;
  for (const Edge& e : g.edges()) bound = std::max(bound, du[e.u] + dv[e.v] - 1);
  return bound;
}

}  // namespace

BipartiteRep BipartiteRep::Create(int u_size, int v_size,
                                  std::vector<Edge> edges) {
  if (u_size < 1 || v_size < 1) {
    throw InvalidArgument("bipartite sides must be non-empty");
  }
  std::map<Edge, int> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u < 1 || e.u > u_size || e.v < 1 || e.v > v_size) {
      throw InvalidArgument("edge " + std::to_string(i + 1) +
                            " has an endpoint outside the vertex sets");
    }
    auto [it, inserted] = seen.emplace(e, static_cast<int>(i + 1));
    if (!inserted) {
      throw EdgeCollision("inputs " + std::to_string(it->second) + " and " +
                              std::to_string(i + 1) + " share the edge (U" +
                              std::to_string(e.u) + ", V" +
                              std::to_string(e.v) + ")",
                          it->second, static_cast<int>(i + 1));
    }
  }
  return BipartiteRep(u_size, v_size, std::move(edges));
}

BipartiteRep ToBipartite(const TableProtocol& t) {
  const Link* ab = FindLink(t, 1, 2);
  const Link* ac = FindLink(t, 1, 3);
  if (t.n() != 3 || t.links().size() != 3 || ab == nullptr || ac == nullptr ||
      FindLink(t, 2, 3) == nullptr) {
    throw InvalidArgument(
        "bipartite form needs n = 3 and exactly the links 1->2, 1->3, 2->3");
  }
  std::vector<Edge> edges;
  for (int x = 1; x <= t.M(); ++x) edges.push_back({(*ab)(x), (*ac)(x)});
  return BipartiteRep::Create(ab->range_size(), ac->range_size(),
                              std::move(edges));
}

std::vector<std::pair<int, int>> ConflictPairs(const BipartiteRep& g) {
  const std::set<Edge> present(g.edges().begin(), g.edges().end());
  std::vector<std::pair<int, int>> pairs;
  for (int x = 1; x <= g.M(); ++x) {
    for (int y = x + 1; y <= g.M(); ++y) {
      const Edge& e = g.edge(x);
      const Edge& f = g.edge(y);
      if (e.u == f.u || e.v == f.v || present.contains({e.u, f.v}) ||
          present.contains({f.u, e.v})) {
        pairs.emplace_back(x, y);
      }
    }
  }
  return pairs;
}

ColoringInstance ColoringInstance::Create(BipartiteRep graph,
                                          std::vector<int> colors,
                                          int color_count) {
  if (colors.size() != static_cast<std::size_t>(graph.M())) {
    throw InvalidColoring("need exactly one color per edge");
  }
  for (int c : colors) {
    if (c < 1 || c > color_count) {
      throw InvalidColoring("color " + std::to_string(c) + " outside 1.." +
                            std::to_string(color_count));
    }
  }
  for (const auto& [x, y] : ConflictPairs(graph)) {
    if (colors[x - 1] == colors[y - 1]) {
      throw InvalidColoring("edges " + std::to_string(x) + " and " +
                            std::to_string(y) +
                            " are within distance 2 but share color " +
                            std::to_string(colors[x - 1]));
    }
  }
  return ColoringInstance(std::move(graph), std::move(colors), color_count);
}

std::optional<ColoringInstance> StrongEdgeColor(const BipartiteRep& g,
                                                int color_count,
                                                ColoringStats* stats) {
  if (color_count < 1) throw InvalidArgument("need at least one color");
  const int m = g.M();
  const auto earlier = EarlierConflicts(g);
  std::vector<int> colors(m, 0);
  // max_used[i]: largest color among edges 0..i-1. Restricting edge i to
  // colors <= max_used[i] + 1 skips color renamings and leaves the first-fit
  // solution unchanged.
  std::vector<int> max_used(m + 1, 0);
  std::uint64_t nodes = 0;

  int i = 0;
  while (i >= 0 && i < m) {
    int c = colors[i] + 1;
    const int limit = std::min(color_count, max_used[i] + 1);
    for (; c <= limit; ++c) {
      bool clash = false;
      for (int j : earlier[i]) {
        if (colors[j] == c) {
          clash = true;
          break;
        }
      }
      if (!clash) break;
    }
    if (c <= limit) {
      ++nodes;
      colors[i] = c;
      max_used[i + 1] = std::max(max_used[i], c);
      ++i;
    } else {
      colors[i] = 0;
      --i;
    }
  }
  if (stats != nullptr) stats->nodes += nodes;
  if (i < 0) return std::nullopt;
  return ColoringInstance::Create(g, std::move(colors), color_count);
}

TableProtocol ProtocolFromColoring(const ColoringInstance& c) {
  const BipartiteRep& g = c.graph();
  std::vector<Symbol> ab, ac;
  for (const Edge& e : g.edges()) {
    ab.push_back(e.u);
    ac.push_back(e.v);
  }
  return TableProtocol::Create(3, g.M(),
                               {{1, 2, Tighten(ab)},
                                {1, 3, Tighten(ac)},
                                {2, 3, Tighten(c.colors())}});
}

std::vector<Triple> CandidateTriples(int M) {
  if (M < 1) throw InvalidArgument("requires M >= 1");
  std::vector<Triple> out;
  for (int a = 1; a <= M; ++a) {
    for (int b = 1; b <= M; ++b) {
      for (int c = 1; c <= M; ++c) {
        if (a * b >= M && a * c >= M && b * c >= M) out.push_back({a, b, c});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Triple& x, const Triple& y) {
    if (x.product() != y.product()) return x.product() < y.product();
    return x < y;
  });
  return out;
}

std::vector<BipartiteRep> EnumerateGraphs(int a, int b, int M) {
  if (a < 1 || b < 1 || M < 1) throw InvalidArgument("requires a, b, M >= 1");
  if (b > 31 || a > 31) throw InvalidArgument("grid side too large");
  std::vector<BipartiteRep> out;
  if (static_cast<long long>(a) * b < M || M < std::max(a, b)) return out;

  const Mask full = (Mask{1} << b) - 1;
  std::set<std::vector<Mask>> keys;
  std::vector<Mask> rows;
  // Rows in non-increasing mask order: one representative per row order.
  auto recurse = [&](auto&& self, Mask max_mask, int edges_left) -> void {
    const int rows_left = a - static_cast<int>(rows.size());
    if (rows_left == 0) {
      if (edges_left != 0) return;
      Mask covered = 0;
      for (Mask r : rows) covered |= r;
      if (covered == full) keys.insert(CanonicalKey(rows, b));
      return;
    }
    // every remaining row needs 1..b edges
    if (edges_left < rows_left || edges_left > rows_left * b) return;
    for (Mask m = max_mask; m >= 1; --m) {
      const int pc = std::popcount(m);
      if (pc > edges_left) continue;
      rows.push_back(m);
      self(self, m, edges_left - pc);
      rows.pop_back();
    }
  };
  recurse(recurse, full, M);

  out.reserve(keys.size());
  for (const auto& key : keys) out.push_back(GraphFromKey(key, a, b));
  return out;
}

SearchResult OptimalSearch(int M, const SearchOptions& options) {
  if (M < 1 || M > options.max_M) {
    throw InvalidArgument("OptimalSearch requires 1 <= M <= " +
                          std::to_string(options.max_M));
  }
  const std::vector<Triple> candidates = CandidateTriples(M);
  std::map<std::pair<int, int>, std::vector<BipartiteRep>> graph_cache;
  std::vector<Triple> infeasible;
  std::uint64_t examined = 0;

  for (std::size_t t = 0; t < candidates.size(); ++t) {
    const Triple& triple = candidates[t];
    auto it = graph_cache.find({triple.a, triple.b});
    if (it == graph_cache.end()) {
      it = graph_cache
               .emplace(std::pair{triple.a, triple.b},
                        EnumerateGraphs(triple.a, triple.b, M))
               .first;
    }
    for (const BipartiteRep& g : it->second) {
      if (examined >= options.graph_budget) {
        throw SearchBudgetExceeded(
            "graph budget of " + std::to_string(options.graph_budget) +
                " exhausted before an optimum was proven",
            examined, options.graph_budget,
            std::vector<Triple>(candidates.begin() + t, candidates.end()));
      }
      ++examined;
      if (CliqueLowerBound(g) > triple.c) continue;
      auto coloring = StrongEdgeColor(g, triple.c);
      if (!coloring) continue;

      TableProtocol protocol = ProtocolFromColoring(*coloring);
      if (!VerifyAnyoneDetects(protocol).ok) {
        throw Error("internal: coloring witness does not solve the problem");
      }
      return SearchResult{triple,
                          triple.product(),
                          std::log2(static_cast<double>(triple.product())),
                          std::move(*coloring),
                          std::move(protocol),
                          std::move(infeasible),
                          examined};
    }
    infeasible.push_back(triple);
  }
  // (1, M, M) is always feasible, so the loop returns.
  throw Error("internal: no feasible triple found");
}

}  // namespace meq
