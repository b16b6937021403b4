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

#ifndef MEQ_SIMULATE_H_
#define MEQ_SIMULATE_H_

#include <vector>

#include "meq/protocol.h"

namespace meq {

// Everything that happened during one run.
struct Transcript {
  std::vector<Symbol> symbols;     // symbol sent at each step
  std::vector<History> received;   // received[i - 1] is node i's i+
  std::vector<History> sent;       // sent[i - 1] is node i's i-
  std::vector<int> decisions;      // decisions[i - 1] is EQ_i

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Replays the schedule on v. Throws InvalidArgument if v does not match the
// protocol's (n, M), MalformedProtocol on a missing table entry.
Transcript Simulate(const GeneralProtocol& p, const InputVector& v);

// Same run for the table form, without building lookup tables.
Transcript Simulate(const TableProtocol& p, const InputVector& v);

// Decisions only. inputs[i - 1] is x_i and must already be in 1..M.
std::vector<int> Decide(const GeneralProtocol& p, std::span<const int> inputs);

}  // namespace meq

#endif  // MEQ_SIMULATE_H_
