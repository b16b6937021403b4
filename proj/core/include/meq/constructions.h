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

#ifndef MEQ_CONSTRUCTIONS_H_
#define MEQ_CONSTRUCTIONS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "meq/protocol.h"

namespace meq {

// Node i < n sends x_i to node n. Cost (n - 1) log2 M.
TableProtocol StarProtocol(int n, int M);

// Three nodes, six input values, three symbols per link:
//   x     1 2 3 4 5 6
//   AB    1 1 2 2 3 3
//   AC    1 2 2 3 3 1
//   BC    1 2 3 1 2 3
TableProtocol Table36();

// M = 6^h generalization of Table36(): AB pairs consecutive inputs, AC pairs
// them shifted by one with wraparound, BC cycles with period 3.
// Requires 1 <= h <= 6.
TableProtocol ExtendedTable(int h);

// Injective map from 1..M into {1..base}^h.
class VectorMapping {
 public:
  // digits[x - 1] is the vector for input x. Throws InvalidArgument on wrong
  // arity, out-of-range coordinates or two inputs sharing a vector.
  static VectorMapping Create(int base, int h,
                              std::vector<std::vector<int>> digits);

  // Big-endian base-`base` digits of x - 1, each shifted up by one. Requires
  // base^h >= M.
  static VectorMapping BigEndian(int M, int base, int h);

  int M() const { return static_cast<int>(digits_.size()); }
  int base() const { return base_; }
  int h() const { return h_; }
  std::span<const int> operator()(int x) const { return digits_[x - 1]; }

 private:
  VectorMapping(int base, int h, std::vector<std::vector<int>> digits)
      : base_(base), h_(h), digits_(std::move(digits)) {}

  int base_;
  int h_;
  std::vector<std::vector<int>> digits_;
};

// Runs `base` once per coordinate of the mapped vector; every link carries
// the tuple of per-coordinate symbols (re-tightened). The mapping's base must
// equal base.M(). Correct whenever `base` is.
TableProtocol ParallelCompose(const TableProtocol& base,
                              const VectorMapping& mapping);

// Sizes of the binary-link protocol for M = 2^k inputs.
struct PowerOfTwoPlan {
  int k = 0;
  int h = 0;  // least h with 6^h >= 2^k
  int b = 0;  // least b with 2^b >= 3^h
  int bits() const { return 3 * b; }
};

// Exact integer arithmetic; valid for any k >= 1.
PowerOfTwoPlan PlanPowerOfTwo(int k);

// 3 * ceil(ceil(k log_6 2) log_2 3).
int ComplexityFormulaPowerOfTwo(int k);

// Largest k MeqThreePowerOfTwo() will materialize (tables have 2^k entries).
inline constexpr int kMaxMaterializedK = 16;

// Three nodes, M = 2^k, binary symbols only. Each input is mapped to h base-6
// digits, Table36() runs per digit, and the h ternary symbols of a link are
// packed big-endian into one b-bit word sent as b binary links, most
// significant bit first. Link order: b links 1->2, b links 1->3, b links
// 2->3. Bits that never vary get range 1.
TableProtocol MeqThreePowerOfTwo(int k);

struct CrossoverRow {
  int k = 0;
  int bits = 0;   // ComplexityFormulaPowerOfTwo(k)
  int upper = 0;  // 2k
};

struct CrossoverReport {
  std::vector<CrossoverRow> rows;   // k = 1..k_max
  std::vector<int> strict;          // k with bits < 2k
  std::vector<int> violations;      // k >= 40 with bits >= 2k
  std::vector<int> linear_bound_violations;  // bits >= 1.840k + 7.755
  // max over k of bits - 1.840k, i.e. the additive constant actually needed.
  double max_linear_gap = 0.0;

  bool holds() const {
    return violations.empty() && linear_bound_violations.empty();
  }
};

// Requires k_max >= 40.
CrossoverReport CrossoverScan(int k_max);

// Turns an anyone-detects table protocol into a centralized one: after the
// original links, every node 1 < i < n sends EQ_i to node n on a binary
// link, and node n outputs the max of its own decision and those bits.
// Throws InvalidArgument if p does not pass VerifyAnyoneDetects.
GeneralProtocol CdWrapper(const TableProtocol& p,
                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace meq

#endif  // MEQ_CONSTRUCTIONS_H_
