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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chiralq/fermion.hpp"
#include "chiralq/pauli.hpp"
#include "chiralq/statevector.hpp"

namespace chiralq {

enum class ExcitationKind { Single, Double };

/// Spin-conserving excitation a+_vir... a_occ... acting on the reference.
struct ExcitationOperator {
  ExcitationKind kind = ExcitationKind::Single;
  std::vector<std::size_t> occ;  // spin-orbital indices, ascending
  std::vector<std::size_t> vir;  // spin-orbital indices, ascending
  FermionOperator fermionic;
  QubitOperator qubit_form;

  std::string label() const;
};

struct ExcitationManifold {
  std::size_t n_occ_spatial = 0;
  std::size_t n_vir_spatial = 0;
  std::vector<ExcitationOperator> operators;

  std::size_t size() const noexcept { return operators.size(); }
  std::size_t n_qubits() const noexcept {
    return 2 * (n_occ_spatial + n_vir_spatial);
  }
};

ExcitationOperator make_excitation(std::vector<std::size_t> occ,
                                   std::vector<std::size_t> vir,
                                   std::size_t n_modes);

/// 2 o v + 2 C(o,2) C(v,2) + o^2 v^2
std::size_t manifold_size(std::size_t n_occ, std::size_t n_vir);

/// Singles, then same-spin doubles (alpha, beta), then mixed-spin doubles.
ExcitationManifold generate_manifold(std::size_t n_occ, std::size_t n_vir);

struct QeomMatrices {
  Eigen::MatrixXd A, B, S, T;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(A.rows()); }
};

QeomMatrices assemble_matrices(const QubitOperator& hamiltonian,
                               const ExcitationManifold& manifold,
                               const Statevector& psi0, std::size_t workers = 1);

/// Expands every commutator as a QubitOperator. Slow; used for cross-checks.
QeomMatrices assemble_matrices_symbolic(const QubitOperator& hamiltonian,
                                        const ExcitationManifold& manifold,
                                        const Statevector& psi0);

/// Keeps the `keep` operators with the lowest A_mm / S_mm, in manifold order.
ExcitationManifold truncate_manifold(const ExcitationManifold& manifold,
                                     const QubitOperator& hamiltonian,
                                     const Statevector& psi0, std::size_t keep);

struct SecularOptions {
  double omega_min = 1e-6;
  double metric_cutoff = 1e-8;
  double norm_cutoff = 1e-8;
  bool tda = false;
};

struct QeomState {
  double omega = 0.0;
  Eigen::VectorXd c;  // forward amplitudes
  Eigen::VectorXd d;  // backward amplitudes
  double norm = 0.0;  // <[O, O+]> for the stored (c, d)
};

struct QeomSolution {
  std::vector<QeomState> states;
  std::size_t discarded_dimension = 0;
  bool tda = false;
};

QeomSolution solve_secular(const QeomMatrices& mats,
                           const SecularOptions& options = {});

/// All eigenvalues of the regularized block problem, ascending.
std::vector<double> block_spectrum(const QeomMatrices& mats,
                                   const SecularOptions& options = {});

/// Header `manifold,<n_occ>,<n_vir>`, then `index,kind,occ,vir` rows with
/// space-separated spin-orbital lists.
void write_manifold_csv(std::ostream& out, const ExcitationManifold& manifold);
ExcitationManifold read_manifold_csv(std::istream& in);

void write_solution_csv(std::ostream& out, const QeomSolution& sol);
/// One row per state: index, omega, norm, c..., d...
void write_amplitudes_csv(std::ostream& out, const QeomSolution& sol);
QeomSolution read_amplitudes_csv(std::istream& in);

}  // namespace chiralq
