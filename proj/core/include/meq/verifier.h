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

// Exhaustive correctness checks and closed-form bounds.
//
// A protocol solves the "anyone detects" problem when, on every input
// vector, all nodes decide 0 exactly when the inputs are all equal. It solves
// the "centralized detect" problem when one designated node's decision equals
// the equality predicate on every input vector.

#ifndef MEQ_VERIFIER_H_
#define MEQ_VERIFIER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "meq/protocol.h"

namespace meq {

struct VerifyOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct Counterexample {
  InputVector input;
  std::vector<int> decisions;
};

struct Verdict {
  bool ok = false;
  // Present iff !ok. Always the lexicographically smallest violating vector.
  std::optional<Counterexample> counterexample;
  // Vectors visited in lexicographic order up to and including the
  // counterexample, or M^n when ok.
  std::uint64_t vectors_checked = 0;
};

// Throws BudgetExceeded when M^n > options.budget.
Verdict VerifyAnyoneDetects(const GeneralProtocol& p,
                            const VerifyOptions& options = {});
Verdict VerifyAnyoneDetects(const TableProtocol& p,
                            const VerifyOptions& options = {});

// detector defaults to node n.
Verdict VerifyCentralizedDetect(const GeneralProtocol& p,
                                std::optional<NodeId> detector = std::nullopt,
                                const VerifyOptions& options = {});
Verdict VerifyCentralizedDetect(const TableProtocol& p,
                                std::optional<NodeId> detector = std::nullopt,
                                const VerifyOptions& options = {});

// (n / 2) * log2(M): cut-based fooling-set bound.
double FoolingLowerBound(int n, int M);

// (n - 1) * log2(M): everyone sends its input to node n.
double TrivialUpperBound(int n, int M);

}  // namespace meq

#endif  // MEQ_VERIFIER_H_
