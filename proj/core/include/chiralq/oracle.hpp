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
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chiralq/pauli.hpp"
#include "chiralq/statevector.hpp"

namespace chiralq {

inline constexpr std::size_t kOracleDefaultMaxQubits = 14;
inline constexpr std::size_t kOracleHardMaxQubits = 16;

/// Electron count and twice the spin projection; alpha modes are the lower
/// half of the register.
struct Sector {
  std::size_t n_electrons = 0;
  int ms2 = 0;
};

struct ExactSolution {
  std::vector<double> energies;
  std::vector<Statevector> states;
  std::optional<Sector> sector;
};

/// Basis indices belonging to the sector, ascending.
std::vector<std::size_t> sector_basis(std::size_t n_qubits, const Sector& sector);

/// Dense matrix of `op` restricted to `basis`.
Eigen::MatrixXcd dense_matrix(const QubitOperator& op,
                              const std::vector<std::size_t>& basis);
Eigen::MatrixXcd dense_matrix(const QubitOperator& op);

/// Lowest k eigenpairs (k = 0 returns all). Each eigenvector is rotated so its
/// largest component is real and positive.
ExactSolution exact_eigensystem(const QubitOperator& hamiltonian, std::size_t k = 0,
                                std::optional<Sector> sector = std::nullopt,
                                std::size_t max_qubits = kOracleDefaultMaxQubits);

/// <psi_0| op |psi_k> for every state.
std::vector<cplx> exact_transition_moments(const ExactSolution& sol,
                                           const QubitOperator& op);

void write_energies_csv(std::ostream& out, const ExactSolution& sol);

}  // namespace chiralq
