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

#include "meq/transforms.h"

#include <algorithm>
#include <string>
#include <utility>

#include "meq/errors.h"
#include "meq/simulate.h"

namespace meq {
namespace {

// Rewritten tables can reference (input, history) pairs the original never
// reaches. That only happens on input vectors where the flipped step's old
// sender already detects a mismatch, so any value is sound there.
constexpr Symbol kUnreachableSymbol = 1;
constexpr int kUnreachableDecision = 1;

template <typename V>
V LookupOr(const LookupTable<V>& table, int input,
           std::span<const Symbol> history, V fallback) {
  auto it = table.find(TableKeyView{input, history});
  return it == table.end() ? fallback : it->second;
}

std::vector<std::vector<std::size_t>> Incoming(
    int n, const std::vector<StepShape>& shape) {
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t l = 0; l < shape.size(); ++l) {
    in[shape[l].receiver - 1].push_back(l);
  }
  return in;
}

void CheckStepIndex(const GeneralProtocol& p, std::size_t step) {
  if (step < 1 || step > p.length()) {
    throw InvalidArgument("step index " + std::to_string(step) +
                          " outside 1.." + std::to_string(p.length()));
  }
}

}  // namespace

std::vector<Symbol> ExpectedSymbols(const GeneralProtocol& p, int x) {
  if (x < 1 || x > p.M()) {
    throw InvalidArgument("input value " + std::to_string(x) + " outside 1.." +
                          std::to_string(p.M()));
  }
  return Simulate(p, InputVector(p.M(), std::vector<int>(p.n(), x))).symbols;
}

Symbol ExpectedSymbol(const GeneralProtocol& p, std::size_t step, int x) {
  CheckStepIndex(p, step);
  return ExpectedSymbols(p, x)[step - 1];
}

GeneralProtocol FlipStep(const GeneralProtocol& p, std::size_t step,
                         std::uint64_t budget) {
  CheckStepIndex(p, step);
  CheckEnumerationBudget(p.n(), p.M(), budget);
  const std::size_t flipped = step - 1;
  const NodeId old_sender = p.steps()[flipped].sender;

  std::vector<Symbol> expected(p.M() + 1);
  for (int x = 1; x <= p.M(); ++x) expected[x] = ExpectedSymbol(p, step, x);

  std::vector<StepShape> shape;
  for (const Step& s : p.steps()) shape.push_back({s.sender, s.receiver});
  std::swap(shape[flipped].sender, shape[flipped].receiver);

  const auto& before = p.incoming();
  const auto after = Incoming(p.n(), shape);

  // Maps a node's history in the flipped protocol back to the history the
  // original tables are keyed by, restricted to steps < cutoff. The old
  // receiver substitutes its expected symbol for the step it no longer
  // receives; the old sender drops the step it now receives.
  auto original_history = [&](NodeId node, int x,
                              std::span<const Symbol> history,
                              std::size_t cutoff) {
    const auto& orig = before[node - 1];
    const auto& now = after[node - 1];
    History out;
    std::size_t j = 0;
    for (std::size_t s : orig) {
      if (s >= cutoff) break;
      while (j < history.size() && now[j] < s) ++j;
      if (j < history.size() && now[j] == s) {
        out.push_back(history[j]);
      } else {
        out.push_back(expected[x]);  // s == flipped, node == old_receiver
      }
    }
    return out;
  };

  auto symbol = [&](std::size_t l, int x, std::span<const Symbol> history) {
    if (l == flipped) return expected[x];
    const History h = original_history(shape[l].sender, x, history, l);
    return LookupOr(p.steps()[l].table, x, h, kUnreachableSymbol);
  };

  auto decide = [&](NodeId node, int x, std::span<const Symbol> history) {
    const History h = original_history(node, x, history, p.length());
    int d = LookupOr(p.decisions(node), x, h, kUnreachableDecision);
    if (node == old_sender) {
      const auto& now = after[node - 1];
      const auto pos = static_cast<std::size_t>(
          std::find(now.begin(), now.end(), flipped) - now.begin());
      const History prefix = original_history(node, x, history, flipped);
      auto it = p.steps()[flipped].table.find(TableKeyView{x, prefix});
      if (it == p.steps()[flipped].table.end() || it->second != history[pos]) {
        d = 1;
      }
    }
    return d;
  };

  return Materialize(p.n(), p.M(), shape, symbol, decide, budget);
}

TableProtocol MakeIid(const GeneralProtocol& p, std::uint64_t budget) {
  GeneralProtocol ordered = p;
  for (std::size_t l = 1; l <= p.length(); ++l) {
    if (ordered.step(l).sender > ordered.step(l).receiver) {
      ordered = FlipStep(ordered, l, budget);
    }
  }

  std::vector<std::vector<Symbol>> expected(p.M());
  for (int x = 1; x <= p.M(); ++x) expected[x - 1] = ExpectedSymbols(ordered, x);

  std::vector<Link> links;
  for (std::size_t l = 0; l < ordered.length(); ++l) {
    Link link{ordered.steps()[l].sender, ordered.steps()[l].receiver, {}};
    for (int x = 1; x <= p.M(); ++x) link.symbols.push_back(expected[x - 1][l]);
    link.symbols = Tighten(link.symbols);
    links.push_back(std::move(link));
  }
  std::stable_sort(links.begin(), links.end(),
                   [](const Link& a, const Link& b) { return a.from < b.from; });
  return TableProtocol::Create(p.n(), p.M(), std::move(links));
}

}  // namespace meq
