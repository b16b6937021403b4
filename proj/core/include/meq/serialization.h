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

// JSON documents for protocols and bipartite graphs.
//
//   {"kind":"table","n":3,"M":6,
//    "links":[{"from":1,"to":2,"symbols":[1,1,2,2,3,3]}, ...]}
//
//   {"kind":"general","n":3,"M":6,
//    "steps":[{"from":1,"to":2,"range":3,
//              "table":[{"input":1,"history":[],"out":1}, ...]}, ...],
//    "decisions":[{"node":1,
//                  "entries":[{"input":1,"history":[],"out":0}, ...]}, ...]}
//
//   {"kind":"bipartite","M":6,"U":3,"V":3,
//    "edges":[{"x":1,"u":1,"v":1}, ...],
//    "W":3,"colors":[1,2,3,1,2,3]}          // W and colors optional

#ifndef MEQ_SERIALIZATION_H_
#define MEQ_SERIALIZATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "meq/coloring.h"
#include "meq/protocol.h"

namespace meq {

struct BipartiteDocument {
  BipartiteRep graph;
  std::optional<ColoringInstance> coloring;
};

using Document = std::variant<TableProtocol, GeneralProtocol, BipartiteDocument>;

std::string ToJson(const TableProtocol& p);
std::string ToJson(const GeneralProtocol& p);
std::string ToJson(const BipartiteRep& g);
std::string ToJson(const ColoringInstance& c);

// Throws ParseError on malformed JSON or a missing/mistyped field, and the
// usual construction errors (MalformedProtocol, ...) on invalid content.
Document ParseDocument(std::string_view json);

// Accepts "table" and "general" documents only.
std::variant<TableProtocol, GeneralProtocol> ParseProtocol(
    std::string_view json);

}  // namespace meq

#endif  // MEQ_SERIALIZATION_H_
