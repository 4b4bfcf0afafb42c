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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chiralq/pauli.hpp"
#include "chiralq/statevector.hpp"

namespace chiralq {

enum class ShardStrategy { RoundRobin, WeightBalanced };

/// Partition of an operator's canonical term list into k shards.
struct ShardPlan {
  std::size_t n_shards = 0;
  std::size_t n_terms = 0;
  /// Term indices per shard, ascending within each shard.
  std::vector<std::vector<std::size_t>> assignment;

  /// Sum of |c_k| over each shard.
  std::vector<double> weights(const QubitOperator& op) const;
};

/// Weight-balanced packing assigns terms largest |c_k| first to the lightest
/// shard, so shard weights differ by at most the largest |c_k|.
ShardPlan plan_shards(const QubitOperator& op, std::size_t k,
                      ShardStrategy strategy = ShardStrategy::WeightBalanced);

/// Default worker count: CHIRALQ_WORKERS if set, else hardware concurrency.
std::size_t default_worker_count();

/// Evaluates each shard's partial sum independently and reduces them in
/// ascending shard order. `workers` caps concurrent threads (0 = one per
/// shard). The result does not depend on `workers`.
double expectation_sharded(const QubitOperator& op, const ShardPlan& plan,
                           const Statevector& state, std::size_t workers = 0);

/// Same evaluation on a pre-flattened term list, for callers that evaluate
/// one operator many times.
double expectation_sharded(std::span<const std::pair<PauliWord, cplx>> terms,
                           const ShardPlan& plan, const Statevector& state,
                           std::size_t workers = 0);

/// Hermitian operator of `n_terms` distinct random Pauli words with real
/// coefficients in [-1, 1], for benchmarks.
QubitOperator random_pauli_operator(std::size_t n_qubits, std::size_t n_terms,
                                    std::uint64_t seed);
/// Normalized state with Gaussian random amplitudes.
Statevector random_state(std::size_t n_qubits, std::uint64_t seed);

}  // namespace chiralq
