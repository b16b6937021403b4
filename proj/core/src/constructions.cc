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

#include "meq/constructions.h"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "meq/errors.h"
#include "meq/verifier.h"

namespace meq {
namespace {

using boost::multiprecision::cpp_int;

int IntPow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > std::numeric_limits<int>::max()) {
      throw InvalidArgument("integer power overflows");
    }
  }
  return static_cast<int>(r);
}

std::vector<std::vector<std::size_t>> IncomingLinks(const TableProtocol& t) {
  std::vector<std::vector<std::size_t>> in(t.n());
  for (std::size_t l = 0; l < t.links().size(); ++l) {
    in[t.links()[l].to - 1].push_back(l);
  }
  return in;
}

}  // namespace

TableProtocol StarProtocol(int n, int M) {
  if (n < 2 || M < 1) throw InvalidArgument("requires n >= 2 and M >= 1");
  std::vector<Symbol> identity(M);
  for (int x = 1; x <= M; ++x) identity[x - 1] = x;
  std::vector<Link> links;
  for (NodeId i = 1; i < n; ++i) links.push_back({i, n, identity});
  return TableProtocol::Create(n, M, std::move(links));
}

TableProtocol Table36() {
  return TableProtocol::Create(3, 6,
                               {
                                   {1, 2, {1, 1, 2, 2, 3, 3}},
                                   {1, 3, {1, 2, 2, 3, 3, 1}},
                                   {2, 3, {1, 2, 3, 1, 2, 3}},
                               });
}

TableProtocol ExtendedTable(int h) {
  if (h < 1 || h > 6) throw InvalidArgument("ExtendedTable requires 1 <= h <= 6");
  const int M = IntPow(6, h);
  const int half = M / 2;
  Link ab{1, 2, {}}, ac{1, 3, {}}, bc{2, 3, {}};
  for (int x = 1; x <= M; ++x) {
    ab.symbols.push_back((x + 1) / 2);
    ac.symbols.push_back((x / 2) % half + 1);
    bc.symbols.push_back((x - 1) % 3 + 1);
  }
  return TableProtocol::Create(3, M, {std::move(ab), std::move(ac), std::move(bc)});
}

VectorMapping VectorMapping::Create(int base, int h,
                                    std::vector<std::vector<int>> digits) {
  if (base < 1 || h < 1) throw InvalidArgument("requires base >= 1 and h >= 1");
  if (digits.empty()) throw InvalidArgument("mapping needs at least one input");
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const auto& d = digits[i];
    if (d.size() != static_cast<std::size_t>(h)) {
      throw InvalidArgument("vector for input " + std::to_string(i + 1) +
                            " must have " + std::to_string(h) + " coordinates");
    }
    for (int c : d) {
      if (c < 1 || c > base) {
        throw InvalidArgument("coordinate outside 1.." + std::to_string(base));
      }
    }
    if (!seen.insert(d).second) {
      throw InvalidArgument("mapping is not injective: input " +
                            std::to_string(i + 1) +
                            " reuses an earlier vector");
    }
  }
  return VectorMapping(base, h, std::move(digits));
}

VectorMapping VectorMapping::BigEndian(int M, int base, int h) {
  if (M < 1 || base < 1 || h < 1) {
    throw InvalidArgument("requires M, base, h >= 1");
  }
  std::vector<std::vector<int>> digits(M, std::vector<int>(h));
  for (int x = 1; x <= M; ++x) {
    int rest = x - 1;
    for (int j = h - 1; j >= 0; --j) {
      digits[x - 1][j] = rest % base + 1;
      rest /= base;
    }
    if (rest != 0) {
      throw InvalidArgument("base^h is smaller than M");
    }
  }
  return Create(base, h, std::move(digits));
}

TableProtocol ParallelCompose(const TableProtocol& base,
                              const VectorMapping& mapping) {
  if (mapping.base() != base.M()) {
    throw InvalidArgument("mapping digits must range over the base alphabet");
  }
  std::vector<Link> links;
  for (const Link& b : base.links()) {
    const std::int64_t radix = b.range_size();
    std::vector<Symbol> packed;
    for (int x = 1; x <= mapping.M(); ++x) {
      std::int64_t value = 0;
      for (int digit : mapping(x)) {
        value = value * radix + (b(digit) - 1);
        if (value > std::numeric_limits<Symbol>::max()) {
          throw InvalidArgument("composed symbol does not fit in an int");
        }
      }
      packed.push_back(static_cast<Symbol>(value + 1));
    }
    links.push_back({b.from, b.to, Tighten(packed)});
  }
  return TableProtocol::Create(base.n(), mapping.M(), std::move(links));
}

PowerOfTwoPlan PlanPowerOfTwo(int k) {
  if (k < 1) throw InvalidArgument("requires k >= 1");
  PowerOfTwoPlan plan;
  plan.k = k;
  const cpp_int target = cpp_int(1) << k;
  cpp_int six_pow = 1;
  while (six_pow < target) {
    six_pow *= 6;
    ++plan.h;
  }
  cpp_int three_pow = 1;
  for (int i = 0; i < plan.h; ++i) three_pow *= 3;
  cpp_int two_pow = 1;
  while (two_pow < three_pow) {
    two_pow <<= 1;
    ++plan.b;
  }
  return plan;
}

int ComplexityFormulaPowerOfTwo(int k) { return PlanPowerOfTwo(k).bits(); }

TableProtocol MeqThreePowerOfTwo(int k) {
  if (k < 1 || k > kMaxMaterializedK) {
    throw InvalidArgument("MeqThreePowerOfTwo requires 1 <= k <= " +
                          std::to_string(kMaxMaterializedK));
  }
  const PowerOfTwoPlan plan = PlanPowerOfTwo(k);
  const int M = 1 << k;
  const VectorMapping mapping = VectorMapping::BigEndian(M, 6, plan.h);
  const TableProtocol base = Table36();

  std::vector<Link> links;
  for (const Link& b : base.links()) {
    std::vector<std::vector<Symbol>> bit_links(plan.b);
    for (int x = 1; x <= M; ++x) {
      std::uint64_t word = 0;
      for (int digit : mapping(x)) word = word * 3 + (b(digit) - 1);
      for (int i = 0; i < plan.b; ++i) {
        bit_links[i].push_back(
            static_cast<Symbol>((word >> (plan.b - 1 - i)) & 1u) + 1);
      }
    }
    for (auto& symbols : bit_links) {
      links.push_back({b.from, b.to, Tighten(symbols)});
    }
  }
  return TableProtocol::Create(3, M, std::move(links));
}

CrossoverReport CrossoverScan(int k_max) {
  if (k_max < 40) throw InvalidArgument("CrossoverScan requires k_max >= 40");
  CrossoverReport report;
  for (int k = 1; k <= k_max; ++k) {
    const int bits = ComplexityFormulaPowerOfTwo(k);
    report.rows.push_back({k, bits, 2 * k});
    if (bits < 2 * k) {
      report.strict.push_back(k);
    } else if (k >= 40) {
      report.violations.push_back(k);
    }
    // bits < 1.840k + 7.755, scaled by 1000 to stay in integers.
    if (1000LL * bits >= 1840LL * k + 7755) {
      report.linear_bound_violations.push_back(k);
    }
    const double gap = bits - 1.840 * k;
    if (k == 1 || gap > report.max_linear_gap) report.max_linear_gap = gap;
  }
  return report;
}

GeneralProtocol CdWrapper(const TableProtocol& p, std::uint64_t budget) {
  const Verdict verdict = VerifyAnyoneDetects(p, VerifyOptions{budget, 0});
  if (!verdict.ok) {
    throw InvalidArgument(
        "CdWrapper requires a protocol that solves the anyone-detects problem");
  }
  const int n = p.n();
  const auto& links = p.links();
  const auto incoming = IncomingLinks(p);

  std::vector<StepShape> shape;
  for (const Link& l : links) shape.push_back({l.from, l.to});
  for (NodeId i = 2; i < n; ++i) shape.push_back({i, n});

  // Decision of the table protocol from the first in.size() history entries.
  auto table_decision = [&](NodeId node, int x,
                            std::span<const Symbol> history) {
    const auto& in = incoming[node - 1];
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (history[j] != links[in[j]](x)) return 1;
    }
    return 0;
  };

  auto symbol = [&](std::size_t l, int x, std::span<const Symbol> history) {
    if (l < links.size()) return links[l](x);
    const NodeId sender = shape[l].sender;
    return table_decision(sender, x, history) + 1;
  };
  auto decide = [&](NodeId node, int x, std::span<const Symbol> history) {
    int d = table_decision(node, x, history);
    if (node == n) {
      for (std::size_t j = incoming[n - 1].size(); j < history.size(); ++j) {
        d = std::max(d, history[j] - 1);
      }
    }
    return d;
  };
  return Materialize(n, p.M(), shape, symbol, decide, budget);
}

}  // namespace meq
