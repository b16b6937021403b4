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

// Protocol data model for multiparty equality over point-to-point links.
//
// Nodes are numbered 1..n and inputs are drawn from 1..M. A protocol is a
// fixed-length schedule of steps; in each step one node sends one channel
// symbol (an integer in 1..S) to another node. The cost of a step is
// log2(S) where S is the number of symbols the step can actually emit over
// all input vectors ("tight" range).
//
// Two representations are provided:
//   * GeneralProtocol: every step carries an explicit lookup table keyed by
//     (sender input, sender's received history). Arbitrary deterministic
//     protocols fit here.
//   * TableProtocol: the normal form where every link's symbol depends only
//     on the sender's own input and each receiver flags a mismatch when a
//     received symbol differs from the one it would have sent itself.

#ifndef MEQ_PROTOCOL_H_
#define MEQ_PROTOCOL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace meq {

using NodeId = int;
using Symbol = int;
using History = std::vector<Symbol>;

// Cap on the number of input vectors any exhaustive routine will visit.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// M^n, saturated at UINT64_MAX.
std::uint64_t InputSpaceSize(int n, int M);

// Throws BudgetExceeded when M^n > budget.
void CheckEnumerationBudget(int n, int M, std::uint64_t budget);

class InputVector {
 public:
  // Throws InvalidArgument unless values.size() >= 2, M >= 1 and every value
  // lies in 1..M.
  InputVector(int M, std::vector<int> values);

  int n() const { return static_cast<int>(values_.size()); }
  int M() const { return M_; }
  std::span<const int> values() const { return values_; }

  // 1-based, like node ids.
  int operator[](NodeId node) const { return values_[node - 1]; }

  friend bool operator==(const InputVector&, const InputVector&) = default;
  friend auto operator<=>(const InputVector& a, const InputVector& b) {
    return a.values_ <=> b.values_;
  }

 private:
  int M_;
  std::vector<int> values_;
};

// 0 iff all entries are equal.
int EqOracle(const InputVector& v);

// Visits all M^n input vectors in lexicographic order. The callback may
// return false to stop early; ForEachInput returns false in that case.
bool ForEachInput(int n, int M,
                  const std::function<bool(std::span<const int>)>& visit);

// Lookup key of a step or decision table.
struct TableKey {
  int input = 0;
  History history;

  friend bool operator==(const TableKey&, const TableKey&) = default;
  friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

// Non-owning form of TableKey used for lookups during simulation.
struct TableKeyView {
  int input;
  std::span<const Symbol> history;
};

struct TableKeyLess {
  using is_transparent = void;
  bool operator()(const TableKey& a, const TableKey& b) const { return a < b; }
  bool operator()(const TableKey& a, const TableKeyView& b) const;
  bool operator()(const TableKeyView& a, const TableKey& b) const;
};

template <typename V>
using LookupTable = std::map<TableKey, V, TableKeyLess>;

struct Step {
  NodeId sender = 0;
  NodeId receiver = 0;
  int range_size = 1;
  LookupTable<Symbol> table;

  friend bool operator==(const Step&, const Step&) = default;
};

// Per-node decision table: (x_i, full received history) -> {0, 1}.
using DecisionTable = LookupTable<int>;

class GeneralProtocol;

// Semantic description of a protocol: a schedule shape plus functions giving
// the symbol and decision. Materialize() evaluates them over every input
// vector and returns the equivalent table-driven protocol with tightened
// ranges. Histories passed to the callbacks are in the callbacks' own symbol
// space (before tightening) and step indices are 0-based. Throws
// MalformedProtocol if a callback's output is not a function of
// (input, history).
struct StepShape {
  NodeId sender;
  NodeId receiver;
};
using SymbolFn = std::function<Symbol(std::size_t step, int input,
                                      std::span<const Symbol> history)>;
using DecisionFn = std::function<int(NodeId node, int input,
                                     std::span<const Symbol> history)>;

GeneralProtocol Materialize(int n, int M, std::span<const StepShape> shape,
                            const SymbolFn& symbol, const DecisionFn& decide,
                            std::uint64_t budget = kDefaultEnumerationBudget);

class GeneralProtocol {
 public:
  // Validates structure and, by enumerating all M^n input vectors, that every
  // reachable (input, history) pair has an entry and every step's range is
  // tight. Throws MalformedProtocol or BudgetExceeded.
  static GeneralProtocol Create(
      int n, int M, std::vector<Step> steps,
      std::vector<DecisionTable> decisions,
      std::uint64_t budget = kDefaultEnumerationBudget);

  // Zero steps; every node decides 0.
  static GeneralProtocol Empty(int n, int M);

  int n() const { return n_; }
  int M() const { return M_; }
  std::size_t length() const { return steps_.size(); }
  const std::vector<Step>& steps() const { return steps_; }
  // 1-based step index.
  const Step& step(std::size_t index) const { return steps_.at(index - 1); }
  const DecisionTable& decisions(NodeId node) const {
    return decisions_.at(node - 1);
  }
  const std::vector<DecisionTable>& all_decisions() const { return decisions_; }

  // For each node (0-based slot), the 0-based indices of steps it receives on,
  // in schedule order. Position j of a node's history is the symbol of the
  // j-th of these steps.
  const std::vector<std::vector<std::size_t>>& incoming() const {
    return incoming_;
  }

  friend GeneralProtocol Materialize(int n, int M,
                                     std::span<const StepShape> shape,
                                     const SymbolFn& symbol,
                                     const DecisionFn& decide,
                                     std::uint64_t budget);

  friend bool operator==(const GeneralProtocol& a, const GeneralProtocol& b) {
    return a.n_ == b.n_ && a.M_ == b.M_ && a.steps_ == b.steps_ &&
           a.decisions_ == b.decisions_;
  }

 private:
  GeneralProtocol(int n, int M, std::vector<Step> steps,
                  std::vector<DecisionTable> decisions);

  int n_;
  int M_;
  std::vector<Step> steps_;
  std::vector<DecisionTable> decisions_;
  std::vector<std::vector<std::size_t>> incoming_;
};

struct Link {
  NodeId from = 0;
  NodeId to = 0;
  std::vector<Symbol> symbols;  // symbols[x - 1] for x in 1..M

  Symbol operator()(int x) const { return symbols[x - 1]; }
  int range_size() const;

  friend bool operator==(const Link&, const Link&) = default;
};

class TableProtocol {
 public:
  // Requires 1 <= from < to <= n on every link, one symbol per input value,
  // and tight symbol sets {1..S}. Links are kept in the given order, which is
  // the transmission order. Throws MalformedProtocol.
  static TableProtocol Create(int n, int M, std::vector<Link> links);

  int n() const { return n_; }
  int M() const { return M_; }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(std::size_t index) const { return links_.at(index); }

  // Node decisions: node j flags a mismatch iff some incoming link (i, j)
  // has link(x_i) != link(x_j).
  std::vector<int> Decide(std::span<const int> inputs) const;

  friend bool operator==(const TableProtocol&, const TableProtocol&) = default;

 private:
  TableProtocol(int n, int M, std::vector<Link> links)
      : n_(n), M_(M), links_(std::move(links)) {}

  int n_;
  int M_;
  std::vector<Link> links_;
};

// Order-preserving relabeling of the distinct values onto 1..S.
std::vector<Symbol> Tighten(std::span<const Symbol> symbols);

struct Complexity {
  std::uint64_t product = 1;  // prod of per-step range sizes, exact
  double bits = 0.0;          // log2(product)

  friend bool operator==(const Complexity& a, const Complexity& b) {
    return a.product == b.product;
  }
  friend auto operator<=>(const Complexity& a, const Complexity& b) {
    return a.product <=> b.product;
  }
};

// Throws InvalidArgument if the product overflows 64 bits.
Complexity ComplexityOf(const GeneralProtocol& p);
Complexity ComplexityOf(const TableProtocol& p);

// One step per link in the link order, then decisions that compare every
// received symbol against the expected one. Enumerates the input space to
// build the history-keyed tables.
GeneralProtocol TableToGeneral(const TableProtocol& t,
                               std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace meq

#endif  // MEQ_PROTOCOL_H_
