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

#include "meq/verifier.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "meq/errors.h"
#include "meq/simulate.h"

namespace meq {
namespace {

using DecideFn = std::function<std::vector<int>(std::span<const int>)>;
using ViolationFn = std::function<bool(const std::vector<int>&, int eq)>;

struct SliceHit {
  std::vector<int> input;
  std::vector<int> decisions;
  std::uint64_t offset = 0;  // position within the slice
};

int EqOf(std::span<const int> x) {
  return std::all_of(x.begin(), x.end(), [&](int v) { return v == x[0]; }) ? 0
                                                                           : 1;
}

// Scans all vectors whose first coordinate is `first`, in lexicographic
// order, stopping at the first violation.
std::optional<SliceHit> ScanSlice(int n, int M, int first,
                                  const DecideFn& decide,
                                  const ViolationFn& violates) {
  std::vector<int> x(n, 1);
  x[0] = first;
  std::uint64_t offset = 0;
  while (true) {
    std::vector<int> d = decide(x);
    if (violates(d, EqOf(x))) return SliceHit{x, std::move(d), offset};
    ++offset;
    int pos = n - 1;
    while (pos >= 1 && x[pos] == M) {
      x[pos] = 1;
      --pos;
    }
    if (pos < 1) return std::nullopt;
    ++x[pos];
  }
}

Verdict Scan(int n, int M, const DecideFn& decide, const ViolationFn& violates,
             const VerifyOptions& options) {
  CheckEnumerationBudget(n, M, options.budget);
  unsigned workers = options.workers != 0
                         ? options.workers
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(M));

  std::vector<std::optional<SliceHit>> hits(M + 1);
  std::atomic<int> next{1};
  std::atomic<int> best{M + 1};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    try {
      while (true) {
        const int first = next.fetch_add(1);
        if (first > M || first > best.load()) return;
        hits[first] = ScanSlice(n, M, first, decide, violates);
        if (hits[first]) {
          int cur = best.load();
          while (first < cur && !best.compare_exchange_weak(cur, first)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  const std::uint64_t slice = InputSpaceSize(n - 1, M);
  Verdict verdict;
  for (int first = 1; first <= M; ++first) {
    if (hits[first]) {
      verdict.ok = false;
      verdict.vectors_checked =
          static_cast<std::uint64_t>(first - 1) * slice + hits[first]->offset +
          1;
      verdict.counterexample = Counterexample{
          InputVector(M, std::move(hits[first]->input)),
          std::move(hits[first]->decisions)};
      return verdict;
    }
  }
  verdict.ok = true;
  verdict.vectors_checked = InputSpaceSize(n, M);
  return verdict;
}

bool AnyoneDetectsViolated(const std::vector<int>& d, int eq) {
  const bool all_zero =
      std::all_of(d.begin(), d.end(), [](int v) { return v == 0; });
  return all_zero != (eq == 0);
}

NodeId ResolveDetector(int n, std::optional<NodeId> detector) {
  const NodeId node = detector.value_or(n);
  if (node < 1 || node > n) {
    throw InvalidArgument("detector " + std::to_string(node) +
                          " outside 1.." + std::to_string(n));
  }
  return node;
}

}  // namespace

Verdict VerifyAnyoneDetects(const GeneralProtocol& p,
                            const VerifyOptions& options) {
  return Scan(
      p.n(), p.M(), [&](std::span<const int> x) { return Decide(p, x); },
      AnyoneDetectsViolated, options);
}

Verdict VerifyAnyoneDetects(const TableProtocol& p,
                            const VerifyOptions& options) {
  return Scan(
      p.n(), p.M(), [&](std::span<const int> x) { return p.Decide(x); },
      AnyoneDetectsViolated, options);
}

Verdict VerifyCentralizedDetect(const GeneralProtocol& p,
                                std::optional<NodeId> detector,
                                const VerifyOptions& options) {
  const NodeId node = ResolveDetector(p.n(), detector);
  return Scan(
      p.n(), p.M(), [&](std::span<const int> x) { return Decide(p, x); },
      [node](const std::vector<int>& d, int eq) { return d[node - 1] != eq; },
      options);
}

Verdict VerifyCentralizedDetect(const TableProtocol& p,
                                std::optional<NodeId> detector,
                                const VerifyOptions& options) {
  const NodeId node = ResolveDetector(p.n(), detector);
  return Scan(
      p.n(), p.M(), [&](std::span<const int> x) { return p.Decide(x); },
      [node](const std::vector<int>& d, int eq) { return d[node - 1] != eq; },
      options);
}

double FoolingLowerBound(int n, int M) {
  if (n < 2 || M < 1) throw InvalidArgument("requires n >= 2 and M >= 1");
  return n / 2.0 * std::log2(static_cast<double>(M));
}

double TrivialUpperBound(int n, int M) {
  if (n < 2 || M < 1) throw InvalidArgument("requires n >= 2 and M >= 1");
  return (n - 1) * std::log2(static_cast<double>(M));
}

}  // namespace meq
