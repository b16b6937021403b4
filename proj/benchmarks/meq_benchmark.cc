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

#include <benchmark/benchmark.h>

#include "meq/coloring.h"
#include "meq/constructions.h"
#include "meq/transforms.h"
#include "meq/verifier.h"

namespace meq {
namespace {

void BM_VerifyTable36(benchmark::State& state) {
  const TableProtocol t = Table36();
  for (auto _ : state) benchmark::DoNotOptimize(VerifyAnyoneDetects(t));
}
BENCHMARK(BM_VerifyTable36);

void BM_VerifyExtendedTable(benchmark::State& state) {
  const TableProtocol t = ExtendedTable(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(VerifyAnyoneDetects(t));
  state.SetItemsProcessed(state.iterations() * t.M() * t.M() * t.M());
}
BENCHMARK(BM_VerifyExtendedTable)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_VerifyGeneral(benchmark::State& state) {
  const GeneralProtocol g = CdWrapper(Table36());
  for (auto _ : state) benchmark::DoNotOptimize(VerifyCentralizedDetect(g, 3));
}
BENCHMARK(BM_VerifyGeneral);

void BM_StrongEdgeColor(benchmark::State& state) {
  const BipartiteRep g = ToBipartite(Table36());
  for (auto _ : state) benchmark::DoNotOptimize(StrongEdgeColor(g, 3));
}
BENCHMARK(BM_StrongEdgeColor);

void BM_StrongEdgeColorInfeasible(benchmark::State& state) {
  const BipartiteRep g = ToBipartite(Table36());
  for (auto _ : state) benchmark::DoNotOptimize(StrongEdgeColor(g, 2));
}
BENCHMARK(BM_StrongEdgeColorInfeasible);

void BM_OptimalSearch(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(OptimalSearch(M));
}
BENCHMARK(BM_OptimalSearch)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void BM_MakeIid(benchmark::State& state) {
  const GeneralProtocol g = FlipStep(TableToGeneral(ExtendedTable(2)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(MakeIid(g));
}
BENCHMARK(BM_MakeIid)->Unit(benchmark::kMillisecond);

void BM_CrossoverScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(CrossoverScan(1000));
}
BENCHMARK(BM_CrossoverScan)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace meq

BENCHMARK_MAIN();
