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

#include <vector>

#include <Eigen/Dense>

#include "chiralq/fermion.hpp"
#include "chiralq/model_io.hpp"
#include "chiralq/pauli.hpp"

namespace chiralq {

// Spin orbitals use blocked ordering: alpha modes 0..n-1, beta modes n..2n-1.
inline std::size_t alpha_mode(std::size_t orbital, std::size_t) { return orbital; }
inline std::size_t beta_mode(std::size_t orbital, std::size_t n_orbitals) {
  return orbital + n_orbitals;
}

/// Modes occupied in the closed-shell reference determinant: the lowest
/// n_electrons/2 spatial orbitals of each spin block.
std::vector<std::size_t> reference_occupied_modes(std::size_t n_orbitals,
                                                  std::size_t n_electrons);

/// Second-quantized active-space Hamiltonian
///   E_core + sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r
/// with <pq|rs> = (pr|qs), mapped by Jordan-Wigner.
FermionOperator hamiltonian_fermion_operator(const ActiveSpaceProblem& prob);
QubitOperator build_hamiltonian(const ActiveSpaceProblem& prob);

enum class OneBodyKind {
  Symmetric,               // sum_pq d_pq a+_p a_q
  AntisymmetricImaginary,  // i sum_pq M_pq a+_p a_q, M real antisymmetric
};

/// Spin-summed one-body operator over both spin blocks.
QubitOperator build_one_body_operator(const Eigen::MatrixXd& matrix,
                                      OneBodyKind kind);

QubitOperator number_operator(std::size_t n_qubits);
/// S_z = 1/2 (N_alpha - N_beta).
QubitOperator spin_z_operator(std::size_t n_orbitals);

/// Closed-shell mean-field energy evaluated directly from the integrals.
double mean_field_energy(const ActiveSpaceProblem& prob);

}  // namespace chiralq
