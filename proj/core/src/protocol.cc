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

#include "meq/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "meq/errors.h"

namespace meq {
namespace {

void CheckDimensions(int n, int M) {
  if (n < 2) throw InvalidArgument("node count n must be >= 2");
  if (M < 1) throw InvalidArgument("alphabet size M must be >= 1");
}

std::string FormatHistory(std::span<const Symbol> history) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i) os << ',';
    os << history[i];
  }
  os << ']';
  return os.str();
}

std::vector<std::vector<std::size_t>> IncomingSteps(
    int n, std::span<const StepShape> shape) {
  std::vector<std::vector<std::size_t>> incoming(n);
  for (std::size_t l = 0; l < shape.size(); ++l) {
    incoming[shape[l].receiver - 1].push_back(l);
  }
  return incoming;
}

std::vector<StepShape> ShapeOf(const std::vector<Step>& steps) {
  std::vector<StepShape> shape;
  shape.reserve(steps.size());
  for (const Step& s : steps) shape.push_back({s.sender, s.receiver});
  return shape;
}

// Number of entries in node's history just before step l.
std::size_t HistoryLengthBefore(const std::vector<std::size_t>& incoming,
                                std::size_t l) {
  return static_cast<std::size_t>(
      std::lower_bound(incoming.begin(), incoming.end(), l) -
      incoming.begin());
}

int CompareKeys(int a_input, std::span<const Symbol> a_hist, int b_input,
                std::span<const Symbol> b_hist) {
  if (a_input != b_input) return a_input < b_input ? -1 : 1;
  auto c = std::lexicographical_compare_three_way(
      a_hist.begin(), a_hist.end(), b_hist.begin(), b_hist.end());
  if (c < 0) return -1;
  if (c > 0) return 1;
  return 0;
}

}  // namespace

std::uint64_t InputSpaceSize(int n, int M) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (M != 0 && total > kMax / static_cast<std::uint64_t>(M)) return kMax;
    total *= static_cast<std::uint64_t>(M);
  }
  return total;
}

void CheckEnumerationBudget(int n, int M, std::uint64_t budget) {
  const std::uint64_t size = InputSpaceSize(n, M);
  if (size > budget) {
    std::ostringstream os;
    os << "input space M^n = " << M << "^" << n << " (" << size
       << " vectors) exceeds the enumeration budget " << budget;
    throw BudgetExceeded(os.str(), size, budget);
  }
}

InputVector::InputVector(int M, std::vector<int> values)
    : M_(M), values_(std::move(values)) {
  CheckDimensions(static_cast<int>(values_.size()), M_);
  for (int x : values_) {
    if (x < 1 || x > M_) {
      throw InvalidArgument("input value " + std::to_string(x) +
                            " outside 1.." + std::to_string(M_));
    }
  }
}

int EqOracle(const InputVector& v) {
  const auto values = v.values();
  return std::all_of(values.begin(), values.end(),
                     [&](int x) { return x == values.front(); })
             ? 0
             : 1;
}

bool ForEachInput(int n, int M,
                  const std::function<bool(std::span<const int>)>& visit) {
  std::vector<int> x(n, 1);
  while (true) {
    if (!visit(x)) return false;
    int pos = n - 1;
    while (pos >= 0 && x[pos] == M) {
      x[pos] = 1;
      --pos;
    }
    if (pos < 0) return true;
    ++x[pos];
  }
}

bool TableKeyLess::operator()(const TableKey& a, const TableKeyView& b) const {
  return CompareKeys(a.input, a.history, b.input, b.history) < 0;
}

bool TableKeyLess::operator()(const TableKeyView& a, const TableKey& b) const {
  return CompareKeys(a.input, a.history, b.input, b.history) < 0;
}

GeneralProtocol::GeneralProtocol(int n, int M, std::vector<Step> steps,
                                 std::vector<DecisionTable> decisions)
    : n_(n), M_(M), steps_(std::move(steps)), decisions_(std::move(decisions)) {
  incoming_ = IncomingSteps(n_, ShapeOf(steps_));
}

GeneralProtocol GeneralProtocol::Create(int n, int M, std::vector<Step> steps,
                                        std::vector<DecisionTable> decisions,
                                        std::uint64_t budget) {
  CheckDimensions(n, M);
  if (decisions.size() != static_cast<std::size_t>(n)) {
    throw MalformedProtocol("expected one decision table per node");
  }
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const Step& s = steps[l];
    if (s.sender < 1 || s.sender > n || s.receiver < 1 || s.receiver > n ||
        s.sender == s.receiver) {
      throw MalformedProtocol("step " + std::to_string(l + 1) +
                              " has an invalid sender/receiver pair");
    }
    if (s.range_size < 1) {
      throw MalformedProtocol("step " + std::to_string(l + 1) +
                              " has range size < 1");
    }
  }
  const auto incoming = IncomingSteps(n, ShapeOf(steps));

  auto check_history = [&](const std::string& where, NodeId node,
                           const TableKey& key, std::size_t expected_len) {
    if (key.input < 1 || key.input > M) {
      throw MalformedProtocol(where + ": input " + std::to_string(key.input) +
                              " outside 1.." + std::to_string(M));
    }
    if (key.history.size() != expected_len) {
      throw MalformedProtocol(where + ": history " +
                              FormatHistory(key.history) + " should have " +
                              std::to_string(expected_len) + " entries");
    }
    for (std::size_t j = 0; j < key.history.size(); ++j) {
      const Step& from = steps[incoming[node - 1][j]];
      if (key.history[j] < 1 || key.history[j] > from.range_size) {
        throw MalformedProtocol(where + ": history " +
                                FormatHistory(key.history) +
                                " holds a symbol outside its step's range");
      }
    }
  };

  for (std::size_t l = 0; l < steps.size(); ++l) {
    const Step& s = steps[l];
    const std::string where = "step " + std::to_string(l + 1);
    const std::size_t len = HistoryLengthBefore(incoming[s.sender - 1], l);
    for (const auto& [key, out] : s.table) {
      check_history(where, s.sender, key, len);
      if (out < 1 || out > s.range_size) {
        throw MalformedProtocol(where + ": output " + std::to_string(out) +
                                " outside 1.." + std::to_string(s.range_size));
      }
    }
  }
  for (NodeId i = 1; i <= n; ++i) {
    const std::string where = "decision table of node " + std::to_string(i);
    for (const auto& [key, out] : decisions[i - 1]) {
      check_history(where, i, key, incoming[i - 1].size());
      if (out != 0 && out != 1) {
        throw MalformedProtocol(where + ": decision must be 0 or 1");
      }
    }
  }

  CheckEnumerationBudget(n, M, budget);
  GeneralProtocol p(n, M, std::move(steps), std::move(decisions));

  // Reachability and tightness.
  std::vector<std::set<Symbol>> realized(p.steps_.size());
  std::vector<History> received(n);
  ForEachInput(n, M, [&](std::span<const int> x) {
    for (auto& h : received) h.clear();
    for (std::size_t l = 0; l < p.steps_.size(); ++l) {
      const Step& s = p.steps_[l];
      const int input = x[s.sender - 1];
      const History& h = received[s.sender - 1];
      auto it = s.table.find(TableKeyView{input, h});
      if (it == s.table.end()) {
        throw MalformedProtocol("step " + std::to_string(l + 1) +
                                " has no entry for reachable input " +
                                std::to_string(input) + " with history " +
                                FormatHistory(h));
      }
      realized[l].insert(it->second);
      received[s.receiver - 1].push_back(it->second);
    }
    for (NodeId i = 1; i <= n; ++i) {
      const auto& table = p.decisions_[i - 1];
      if (table.find(TableKeyView{x[i - 1], received[i - 1]}) == table.end()) {
        throw MalformedProtocol("decision table of node " + std::to_string(i) +
                                " has no entry for reachable input " +
                                std::to_string(x[i - 1]) + " with history " +
                                FormatHistory(received[i - 1]));
      }
    }
    return true;
  });
  for (std::size_t l = 0; l < p.steps_.size(); ++l) {
    if (realized[l].size() != static_cast<std::size_t>(p.steps_[l].range_size)) {
      throw MalformedProtocol(
          "step " + std::to_string(l + 1) + " declares range size " +
          std::to_string(p.steps_[l].range_size) + " but realizes " +
          std::to_string(realized[l].size()) + " distinct symbols");
    }
  }
  return p;
}

GeneralProtocol GeneralProtocol::Empty(int n, int M) {
  CheckDimensions(n, M);
  std::vector<DecisionTable> decisions(n);
  for (auto& table : decisions) {
    for (int x = 1; x <= M; ++x) table.emplace(TableKey{x, {}}, 0);
  }
  return GeneralProtocol(n, M, {}, std::move(decisions));
}

int Link::range_size() const {
  return symbols.empty() ? 0 : *std::max_element(symbols.begin(), symbols.end());
}

TableProtocol TableProtocol::Create(int n, int M, std::vector<Link> links) {
  CheckDimensions(n, M);
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& link = links[i];
    const std::string where = "link " + std::to_string(i + 1) + " (" +
                              std::to_string(link.from) + "->" +
                              std::to_string(link.to) + ")";
    if (link.from < 1 || link.to > n || link.from >= link.to) {
      throw MalformedProtocol(where + " must satisfy 1 <= from < to <= n");
    }
    if (link.symbols.size() != static_cast<std::size_t>(M)) {
      throw MalformedProtocol(where + " needs exactly M symbols");
    }
    std::set<Symbol> distinct(link.symbols.begin(), link.symbols.end());
    if (*distinct.begin() < 1 ||
        *distinct.rbegin() != static_cast<Symbol>(distinct.size())) {
      throw MalformedProtocol(where + " symbols are not exactly 1..S");
    }
  }
  return TableProtocol(n, M, std::move(links));
}

std::vector<int> TableProtocol::Decide(std::span<const int> inputs) const {
  std::vector<int> decisions(n_, 0);
  for (const Link& link : links_) {
    if (link(inputs[link.from - 1]) != link(inputs[link.to - 1])) {
      decisions[link.to - 1] = 1;
    }
  }
  return decisions;
}

std::vector<Symbol> Tighten(std::span<const Symbol> symbols) {
  std::vector<Symbol> distinct(symbols.begin(), symbols.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Symbol> out;
  out.reserve(symbols.size());
  for (Symbol s : symbols) {
    out.push_back(static_cast<Symbol>(
        std::lower_bound(distinct.begin(), distinct.end(), s) -
        distinct.begin() + 1));
  }
  return out;
}

namespace {

template <typename Ranges>
Complexity ProductOf(const Ranges& ranges) {
  Complexity c;
  for (int s : ranges) {
    std::uint64_t next;
    if (__builtin_mul_overflow(c.product, static_cast<std::uint64_t>(s),
                               &next)) {
      throw InvalidArgument("complexity product overflows 64 bits");
    }
    c.product = next;
    c.bits += std::log2(static_cast<double>(s));
  }
  return c;
}

}  // namespace

Complexity ComplexityOf(const GeneralProtocol& p) {
  std::vector<int> ranges;
  for (const Step& s : p.steps()) ranges.push_back(s.range_size);
  return ProductOf(ranges);
}

Complexity ComplexityOf(const TableProtocol& p) {
  std::vector<int> ranges;
  for (const Link& l : p.links()) ranges.push_back(l.range_size());
  return ProductOf(ranges);
}

GeneralProtocol TableToGeneral(const TableProtocol& t, std::uint64_t budget) {
  std::vector<StepShape> shape;
  for (const Link& l : t.links()) shape.push_back({l.from, l.to});
  const auto incoming = IncomingSteps(t.n(), shape);
  const auto& links = t.links();
  return Materialize(
      t.n(), t.M(), shape,
      [&](std::size_t l, int input, std::span<const Symbol>) {
        return links[l](input);
      },
      [&](NodeId node, int input, std::span<const Symbol> history) {
        const auto& in = incoming[node - 1];
        for (std::size_t j = 0; j < in.size(); ++j) {
          if (history[j] != links[in[j]](input)) return 1;
        }
        return 0;
      },
      budget);
}

GeneralProtocol Materialize(int n, int M, std::span<const StepShape> shape,
                            const SymbolFn& symbol, const DecisionFn& decide,
                            std::uint64_t budget) {
  CheckDimensions(n, M);
  for (std::size_t l = 0; l < shape.size(); ++l) {
    if (shape[l].sender < 1 || shape[l].sender > n || shape[l].receiver < 1 ||
        shape[l].receiver > n || shape[l].sender == shape[l].receiver) {
      throw InvalidArgument("step " + std::to_string(l + 1) +
                            " has an invalid sender/receiver pair");
    }
  }
  CheckEnumerationBudget(n, M, budget);
  const auto incoming = IncomingSteps(n, shape);

  std::vector<LookupTable<Symbol>> raw(shape.size());
  std::vector<DecisionTable> raw_decisions(n);
  std::vector<History> received(n);

  auto record = [](auto& table, int input, const History& h, int value,
                   const std::string& where) {
    auto it = table.find(TableKeyView{input, h});
    if (it == table.end()) {
      table.emplace(TableKey{input, h}, value);
    } else if (it->second != value) {
      throw MalformedProtocol(where + " is not a function of (input, history)");
    }
  };

  ForEachInput(n, M, [&](std::span<const int> x) {
    for (auto& h : received) h.clear();
    for (std::size_t l = 0; l < shape.size(); ++l) {
      const NodeId s = shape[l].sender;
      const Symbol out = symbol(l, x[s - 1], received[s - 1]);
      if (out < 1) {
        throw MalformedProtocol("step " + std::to_string(l + 1) +
                                " produced a symbol < 1");
      }
      record(raw[l], x[s - 1], received[s - 1], out,
             "step " + std::to_string(l + 1));
      received[shape[l].receiver - 1].push_back(out);
    }
    for (NodeId i = 1; i <= n; ++i) {
      const int d = decide(i, x[i - 1], received[i - 1]);
      if (d != 0 && d != 1) {
        throw MalformedProtocol("decision of node " + std::to_string(i) +
                                " must be 0 or 1");
      }
      record(raw_decisions[i - 1], x[i - 1], received[i - 1], d,
             "decision of node " + std::to_string(i));
    }
    return true;
  });

  // Tighten each step onto 1..S and rewrite every history accordingly.
  std::vector<std::vector<Symbol>> alphabet(shape.size());
  for (std::size_t l = 0; l < shape.size(); ++l) {
    for (const auto& [key, out] : raw[l]) alphabet[l].push_back(out);
    std::sort(alphabet[l].begin(), alphabet[l].end());
    alphabet[l].erase(std::unique(alphabet[l].begin(), alphabet[l].end()),
                      alphabet[l].end());
  }
  auto relabel = [&](std::size_t l, Symbol s) {
    const auto& a = alphabet[l];
    return static_cast<Symbol>(std::lower_bound(a.begin(), a.end(), s) -
                               a.begin() + 1);
  };
  auto rewrite = [&](NodeId node, const TableKey& key) {
    TableKey out{key.input, key.history};
    for (std::size_t j = 0; j < out.history.size(); ++j) {
      out.history[j] = relabel(incoming[node - 1][j], out.history[j]);
    }
    return out;
  };

  std::vector<Step> steps(shape.size());
  for (std::size_t l = 0; l < shape.size(); ++l) {
    steps[l].sender = shape[l].sender;
    steps[l].receiver = shape[l].receiver;
    steps[l].range_size = static_cast<int>(alphabet[l].size());
    for (const auto& [key, out] : raw[l]) {
      steps[l].table.emplace(rewrite(shape[l].sender, key), relabel(l, out));
    }
  }
  std::vector<DecisionTable> decisions(n);
  for (NodeId i = 1; i <= n; ++i) {
    for (const auto& [key, out] : raw_decisions[i - 1]) {
      decisions[i - 1].emplace(rewrite(i, key), out);
    }
  }
  return GeneralProtocol(n, M, std::move(steps), std::move(decisions));
}

}  // namespace meq
