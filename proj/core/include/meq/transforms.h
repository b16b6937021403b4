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

// Equivalence-preserving rewrites of anyone-detects protocols.
//
// The key notion is the expected symbol of a step: what the step would carry
// if every node held the same input x. A receiver that compares what arrived
// with what it expected can detect a mismatch without knowing anything else.

#ifndef MEQ_TRANSFORMS_H_
#define MEQ_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "meq/protocol.h"

namespace meq {

// Symbol sent at (1-based) `step` when all inputs equal x.
Symbol ExpectedSymbol(const GeneralProtocol& p, std::size_t step, int x);

// ExpectedSymbols(p, x)[l - 1] == ExpectedSymbol(p, l, x) for every step l.
std::vector<Symbol> ExpectedSymbols(const GeneralProtocol& p, int x);

// Reverses the direction of (1-based) `step`. The old receiver now sends the
// symbol it expects; later steps it sends behave as if that expected symbol
// had arrived; the old sender additionally flags a mismatch when the symbol
// it now receives differs from what it would have sent. Ranges are
// re-tightened, so the complexity never grows.
GeneralProtocol FlipStep(const GeneralProtocol& p, std::size_t step,
                         std::uint64_t budget = kDefaultEnumerationBudget);

// Normal form: flips every step whose sender id exceeds its receiver id,
// groups transmissions by sender, and replaces every outgoing function by
// its value under all-equal inputs. Receivers compare received symbols with
// expected ones. Links appear ordered by sender, stable within a sender.
TableProtocol MakeIid(const GeneralProtocol& p,
                      std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace meq

#endif  // MEQ_TRANSFORMS_H_
