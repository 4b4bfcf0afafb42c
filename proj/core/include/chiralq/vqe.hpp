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
#include <string>
#include <vector>

#include "chiralq/optimizer.hpp"
#include "chiralq/pauli.hpp"
#include "chiralq/sharding.hpp"
#include "chiralq/statevector.hpp"

namespace chiralq {

enum class Entanglement { Linear, Circular };

const char* to_string(Entanglement e) noexcept;
Entanglement parse_entanglement(const std::string& text);

struct AnsatzSpec {
  std::size_t n_qubits = 0;
  std::size_t layers = 3;
  Entanglement entanglement = Entanglement::Circular;
  std::vector<std::size_t> occupied_modes;

  std::size_t n_params() const noexcept { return n_qubits * (layers + 1); }
  /// Throws RangeError or ConfigError.
  void validate() const;
};

/// X on each occupied mode, then per layer an Ry on every qubit followed by
/// the CNOT chain, then a final Ry layer.
Circuit build_ansatz(const AnsatzSpec& spec);

struct VqeOptions {
  std::uint64_t seed = 7;
  double tol = 1e-4;
  std::size_t max_iter = 20000;
  double penalty_lambda = 1.0;
  double init_range = 0.01;
  std::size_t restarts = 3;
  OptimizerKind optimizer = OptimizerKind::Cobyla;
  double rho_begin = 0.5;
  /// 1 evaluates unsharded.
  std::size_t shards = 1;
  ShardStrategy shard_strategy = ShardStrategy::WeightBalanced;
  std::size_t workers = 0;
};

struct VqeResult {
  double energy = 0.0;
  double objective = 0.0;
  std::vector<double> theta_opt;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> energy_history;
  std::vector<double> objective_history;
  Statevector final_state;
  std::uint64_t seed_used = 0;
  std::size_t attempts = 0;
};

/// <(N - n_e)^2> evaluated on the computational basis.
double number_penalty(const Statevector& state, std::size_t n_electrons);

VqeResult minimize_energy(const QubitOperator& hamiltonian,
                          const AnsatzSpec& spec,
                          const VqeOptions& options = {});

}  // namespace chiralq
