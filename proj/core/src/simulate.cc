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

#include "meq/simulate.h"

#include <string>

#include "meq/errors.h"

namespace meq {
namespace {

void CheckMatches(int n, int M, const InputVector& v) {
  if (v.n() != n || v.M() != M) {
    throw InvalidArgument("input vector has (n, M) = (" +
                          std::to_string(v.n()) + ", " +
                          std::to_string(v.M()) + "), protocol expects (" +
                          std::to_string(n) + ", " + std::to_string(M) + ")");
  }
}

template <typename V>
V Lookup(const LookupTable<V>& table, int input, const History& history,
         const char* what, std::size_t index) {
  auto it = table.find(TableKeyView{input, history});
  if (it == table.end()) {
    std::string h = "[";
    for (std::size_t i = 0; i < history.size(); ++i) {
      if (i) h += ',';
      h += std::to_string(history[i]);
    }
    h += ']';
    throw MalformedProtocol(what + std::to_string(index) + " has no entry for input " +
                            std::to_string(input) + " with history " + h);
  }
  return it->second;
}

}  // namespace

Transcript Simulate(const GeneralProtocol& p, const InputVector& v) {
  CheckMatches(p.n(), p.M(), v);
  Transcript t;
  t.received.resize(p.n());
  t.sent.resize(p.n());
  t.decisions.resize(p.n());
  for (std::size_t l = 0; l < p.length(); ++l) {
    const Step& s = p.steps()[l];
    const Symbol out = Lookup(s.table, v[s.sender], t.received[s.sender - 1],
                              "step ", l + 1);
    t.symbols.push_back(out);
    t.sent[s.sender - 1].push_back(out);
    t.received[s.receiver - 1].push_back(out);
  }
  for (NodeId i = 1; i <= p.n(); ++i) {
    t.decisions[i - 1] =
        Lookup(p.decisions(i), v[i], t.received[i - 1],
               "decision table of node ", i);
  }
  return t;
}

Transcript Simulate(const TableProtocol& p, const InputVector& v) {
  CheckMatches(p.n(), p.M(), v);
  Transcript t;
  t.received.resize(p.n());
  t.sent.resize(p.n());
  for (const Link& link : p.links()) {
    const Symbol out = link(v[link.from]);
    t.symbols.push_back(out);
    t.sent[link.from - 1].push_back(out);
    t.received[link.to - 1].push_back(out);
  }
  t.decisions = p.Decide(v.values());
  return t;
}

std::vector<int> Decide(const GeneralProtocol& p, std::span<const int> inputs) {
  std::vector<History> received(p.n());
  for (std::size_t l = 0; l < p.length(); ++l) {
    const Step& s = p.steps()[l];
    received[s.receiver - 1].push_back(
        Lookup(s.table, inputs[s.sender - 1], received[s.sender - 1],
               "step ", l + 1));
  }
  std::vector<int> decisions(p.n());
  for (NodeId i = 1; i <= p.n(); ++i) {
    decisions[i - 1] = Lookup(p.decisions(i), inputs[i - 1], received[i - 1],
                              "decision table of node ", i);
  }
  return decisions;
}

}  // namespace meq
