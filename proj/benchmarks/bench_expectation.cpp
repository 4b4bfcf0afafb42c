// Copyright 2026 The chiralq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "chiralq/sharding.hpp"
#include "chiralq/statevector.hpp"

namespace {

using namespace chiralq;

void BM_Expectation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QubitOperator op = random_pauli_operator(n, 400, 11);
  const Statevector psi = random_state(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(expectation(op, psi));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(op.size()));
}
BENCHMARK(BM_Expectation)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ExpectationSharded(benchmark::State& state) {
  const std::size_t n = 14;
  const auto k = static_cast<std::size_t>(state.range(0));
  const QubitOperator op = random_pauli_operator(n, 400, 11);
  const Statevector psi = random_state(n, 12);
  const ShardPlan plan = plan_shards(op, k);
  for (auto _ : state)
    benchmark::DoNotOptimize(expectation_sharded(op, plan, psi, k));
}
BENCHMARK(BM_ExpectationSharded)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_PlanShards(benchmark::State& state) {
  const QubitOperator op = random_pauli_operator(16, 5000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(plan_shards(op, 8));
}
BENCHMARK(BM_PlanShards);

}  // namespace
