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

#include "chiralq/hamiltonian.hpp"

#include <cmath>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {

std::vector<std::size_t> reference_occupied_modes(std::size_t n_orbitals,
                                                  std::size_t n_electrons) {
  if (n_electrons % 2 != 0 || n_electrons > 2 * n_orbitals) {
    throw SelectionError(fmt::format(
        "{} electrons cannot fill a closed-shell reference on {} orbitals",
        n_electrons, n_orbitals));
  }
  std::vector<std::size_t> modes;
  for (std::size_t i = 0; i < n_electrons / 2; ++i) {
    modes.push_back(alpha_mode(i, n_orbitals));
  }
  for (std::size_t i = 0; i < n_electrons / 2; ++i) {
    modes.push_back(beta_mode(i, n_orbitals));
  }
  return modes;
}

FermionOperator hamiltonian_fermion_operator(const ActiveSpaceProblem& prob) {
  const std::size_t n = prob.n_active_orbitals;
  FermionOperator op;
  op.add(prob.effective_core_energy, {});
  for (std::size_t spin = 0; spin < 2; ++spin) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const double v = prob.h_eff(static_cast<Eigen::Index>(p),
                                    static_cast<Eigen::Index>(q));
        if (v == 0.0) continue;
        op.add(v, {create(p + spin * n), annihilate(q + spin * n)});
      }
  }
  for (std::size_t s1 = 0; s1 < 2; ++s1)
    for (std::size_t s2 = 0; s2 < 2; ++s2)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) {
              const std::size_t mp = p + s1 * n;
              const std::size_t mq = q + s2 * n;
              const std::size_t mr = r + s1 * n;
              const std::size_t ms = s + s2 * n;
              if (mp == mq || mr == ms) continue;
              const double v = prob.g_act(p, r, q, s);  // <pq|rs> = (pr|qs)
              if (v == 0.0) continue;
              op.add(0.5 * v, {create(mp), create(mq), annihilate(ms),
                               annihilate(mr)});
            }
  return op;
}

QubitOperator build_hamiltonian(const ActiveSpaceProblem& prob) {
  const std::size_t n_qubits = prob.n_qubits();
  if (n_qubits > 64) throw RangeError("more than 64 spin orbitals");
  QubitOperator h = jordan_wigner(hamiltonian_fermion_operator(prob), n_qubits);
  // Real integrals give a Hermitian operator; drop round-off imaginary parts.
  if (h.max_imag() > 1e-10) {
    throw ComputeError(fmt::format(
        "Hamiltonian has imaginary Pauli coefficient {:.3e}", h.max_imag()));
  }
  QubitOperator real(n_qubits);
  for (const auto& [w, c] : h.terms()) real.add_term(w, c.real());
  return real.simplify();
}

QubitOperator build_one_body_operator(const Eigen::MatrixXd& matrix,
                                      OneBodyKind kind) {
  if (matrix.rows() != matrix.cols()) {
    throw DimensionError("one-body matrix must be square");
  }
  const auto n = static_cast<std::size_t>(matrix.rows());
  const double parity = kind == OneBodyKind::Symmetric ? -1.0 : 1.0;
  const double defect =
      n == 0 ? 0.0
             : (matrix + parity * matrix.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw ConsistencyError(fmt::format(
        "one-body matrix violates its {} symmetry by {:.3e}",
        kind == OneBodyKind::Symmetric ? "symmetric" : "antisymmetric", defect));
  }
  const cplx scale = kind == OneBodyKind::Symmetric ? cplx{1.0, 0.0}
                                                    : cplx{0.0, 1.0};
  FermionOperator op;
  for (std::size_t spin = 0; spin < 2; ++spin)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const double v =
            matrix(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        if (v == 0.0) continue;
        op.add(scale * v, {create(p + spin * n), annihilate(q + spin * n)});
      }
  QubitOperator out = jordan_wigner(op, 2 * n);
  QubitOperator real(2 * n);
  for (const auto& [w, c] : out.terms()) real.add_term(w, c.real());
  return real.simplify();
}

QubitOperator number_operator(std::size_t n_qubits) {
  QubitOperator n(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    n.add_term(PauliWord::identity(), 0.5);
    n.add_term(PauliWord::single(q, 'Z'), -0.5);
  }
  return n.simplify();
}

QubitOperator spin_z_operator(std::size_t n_orbitals) {
  QubitOperator sz(2 * n_orbitals);
  for (std::size_t p = 0; p < n_orbitals; ++p) {
    // n_alpha - n_beta = (Z_beta - Z_alpha) / 2
    sz.add_term(PauliWord::single(p, 'Z'), -0.25);
    sz.add_term(PauliWord::single(p + n_orbitals, 'Z'), 0.25);
  }
  return sz.simplify();
}

double mean_field_energy(const ActiveSpaceProblem& prob) {
  const std::size_t n_occ = prob.n_active_electrons / 2;
  double e = prob.effective_core_energy;
  for (std::size_t i = 0; i < n_occ; ++i) {
    e += 2.0 * prob.h_eff(static_cast<Eigen::Index>(i),
                          static_cast<Eigen::Index>(i));
  }
  for (std::size_t i = 0; i < n_occ; ++i)
    for (std::size_t j = 0; j < n_occ; ++j) {
      e += 2.0 * prob.g_act(i, i, j, j) - prob.g_act(i, j, j, i);
    }
  return e;
}

}  // namespace chiralq
