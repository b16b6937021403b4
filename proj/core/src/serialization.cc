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

#include "meq/serialization.h"

#include <json.hpp>

#include <utility>

#include "meq/errors.h"

namespace meq {
namespace {

using nlohmann::json;

json KeyedEntries(const LookupTable<int>& table) {
  json entries = json::array();
  for (const auto& [key, out] : table) {
    entries.push_back(
        {{"input", key.input}, {"history", key.history}, {"out", out}});
  }
  return entries;
}

LookupTable<int> ReadEntries(const json& entries) {
  LookupTable<int> table;
  for (const json& e : entries) {
    TableKey key{e.at("input").get<int>(),
                 e.at("history").get<std::vector<int>>()};
    if (!table.emplace(std::move(key), e.at("out").get<int>()).second) {
      throw ParseError("duplicate table entry");
    }
  }
  return table;
}

json GraphJson(const BipartiteRep& g) {
  json edges = json::array();
  for (int x = 1; x <= g.M(); ++x) {
    edges.push_back({{"x", x}, {"u", g.edge(x).u}, {"v", g.edge(x).v}});
  }
  return {{"kind", "bipartite"},
          {"M", g.M()},
          {"U", g.u_size()},
          {"V", g.v_size()},
          {"edges", edges}};
}

TableProtocol ReadTable(const json& doc) {
  std::vector<Link> links;
  for (const json& l : doc.at("links")) {
    links.push_back({l.at("from").get<int>(), l.at("to").get<int>(),
                     l.at("symbols").get<std::vector<int>>()});
  }
  return TableProtocol::Create(doc.at("n").get<int>(), doc.at("M").get<int>(),
                               std::move(links));
}

GeneralProtocol ReadGeneral(const json& doc) {
  const int n = doc.at("n").get<int>();
  std::vector<Step> steps;
  for (const json& s : doc.at("steps")) {
    Step step;
    step.sender = s.at("from").get<int>();
    step.receiver = s.at("to").get<int>();
    step.range_size = s.at("range").get<int>();
    step.table = ReadEntries(s.at("table"));
    steps.push_back(std::move(step));
  }
  if (n < 2) throw MalformedProtocol("node count n must be >= 2");
  std::vector<DecisionTable> decisions(n);
  std::vector<bool> seen(n, false);
  for (const json& d : doc.at("decisions")) {
    const int node = d.at("node").get<int>();
    if (node < 1 || node > n || seen[node - 1]) {
      throw ParseError("decision node ids must be distinct and in 1..n");
    }
    seen[node - 1] = true;
    decisions[node - 1] = ReadEntries(d.at("entries"));
  }
  return GeneralProtocol::Create(n, doc.at("M").get<int>(), std::move(steps),
                                 std::move(decisions));
}

BipartiteDocument ReadBipartite(const json& doc) {
  const int M = doc.at("M").get<int>();
  std::vector<Edge> edges(M);
  std::vector<bool> seen(M, false);
  const json& list = doc.at("edges");
  if (list.size() != static_cast<std::size_t>(M)) {
    throw ParseError("bipartite document needs exactly M edges");
  }
  for (const json& e : list) {
    const int x = e.at("x").get<int>();
    if (x < 1 || x > M || seen[x - 1]) {
      throw ParseError("edge labels must be a permutation of 1..M");
    }
    seen[x - 1] = true;
    edges[x - 1] = {e.at("u").get<int>(), e.at("v").get<int>()};
  }
  BipartiteRep graph = BipartiteRep::Create(
      doc.at("U").get<int>(), doc.at("V").get<int>(), std::move(edges));
  std::optional<ColoringInstance> coloring;
  if (doc.contains("colors")) {
    coloring = ColoringInstance::Create(graph,
                                        doc.at("colors").get<std::vector<int>>(),
                                        doc.at("W").get<int>());
  }
  return BipartiteDocument{std::move(graph), std::move(coloring)};
}

}  // namespace

std::string ToJson(const TableProtocol& p) {
  json links = json::array();
  for (const Link& l : p.links()) {
    links.push_back({{"from", l.from}, {"to", l.to}, {"symbols", l.symbols}});
  }
  json doc = {{"kind", "table"}, {"n", p.n()}, {"M", p.M()}, {"links", links}};
  return doc.dump(2);
}

std::string ToJson(const GeneralProtocol& p) {
  json steps = json::array();
  for (const Step& s : p.steps()) {
    steps.push_back({{"from", s.sender},
                     {"to", s.receiver},
                     {"range", s.range_size},
                     {"table", KeyedEntries(s.table)}});
  }
  json decisions = json::array();
  for (NodeId i = 1; i <= p.n(); ++i) {
    decisions.push_back({{"node", i}, {"entries", KeyedEntries(p.decisions(i))}});
  }
  json doc = {{"kind", "general"},
              {"n", p.n()},
              {"M", p.M()},
              {"steps", steps},
              {"decisions", decisions}};
  return doc.dump(2);
}

std::string ToJson(const BipartiteRep& g) { return GraphJson(g).dump(2); }

std::string ToJson(const ColoringInstance& c) {
  json doc = GraphJson(c.graph());
  doc["W"] = c.color_count();
  doc["colors"] = c.colors();
  return doc.dump(2);
}

Document ParseDocument(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "table") return ReadTable(doc);
    if (kind == "general") return ReadGeneral(doc);
    if (kind == "bipartite") return ReadBipartite(doc);
    throw ParseError("unknown document kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

std::variant<TableProtocol, GeneralProtocol> ParseProtocol(
    std::string_view text) {
  Document doc = ParseDocument(text);
  if (auto* t = std::get_if<TableProtocol>(&doc)) return std::move(*t);
  if (auto* g = std::get_if<GeneralProtocol>(&doc)) return std::move(*g);
  throw ParseError("expected a protocol document, got a bipartite graph");
}

}  // namespace meq
