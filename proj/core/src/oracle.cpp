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

#include "chiralq/oracle.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "chiralq/error.hpp"
#include "chiralq/units.hpp"

namespace chiralq {

std::vector<std::size_t> sector_basis(std::size_t n_qubits, const Sector& sector) {
  if (n_qubits % 2 != 0)
    throw DimensionError(fmt::format(
        "sector projection needs an even register, got {} qubits", n_qubits));
  const auto ne = static_cast<long>(sector.n_electrons);
  if ((ne + sector.ms2) % 2 != 0 || std::abs(sector.ms2) > ne)
    throw ConfigError(fmt::format("inconsistent sector N={} MS2={}",
                                  sector.n_electrons, sector.ms2));
  const auto n_alpha = static_cast<unsigned>((ne + sector.ms2) / 2);
  const auto n_beta = static_cast<unsigned>((ne - sector.ms2) / 2);
  const std::size_t half = n_qubits / 2;
  const std::size_t mask = (std::size_t{1} << half) - 1;
  std::vector<std::size_t> basis;
  for (std::size_t b = 0; b < (std::size_t{1} << n_qubits); ++b) {
    if (static_cast<unsigned>(std::popcount(b & mask)) == n_alpha &&
        static_cast<unsigned>(std::popcount(b >> half)) == n_beta)
      basis.push_back(b);
  }
  return basis;
}

Eigen::MatrixXcd dense_matrix(const QubitOperator& op,
                              const std::vector<std::size_t>& basis) {
  std::unordered_map<std::size_t, Eigen::Index> pos;
  pos.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    pos.emplace(basis[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [word, coeff] : op.terms()) {
    const cplx yphase = phase_of(word.y_count());
    for (Eigen::Index col = 0; col < n; ++col) {
      const std::size_t b = basis[static_cast<std::size_t>(col)];
      const auto it = pos.find(b ^ word.x);
      if (it == pos.end()) continue;
      const double sign = std::popcount(b & word.z) % 2 ? -1.0 : 1.0;
      m(it->second, col) += coeff * yphase * sign;
    }
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const QubitOperator& op) {
  std::vector<std::size_t> basis(std::size_t{1} << op.n_qubits());
  for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  return dense_matrix(op, basis);
}

ExactSolution exact_eigensystem(const QubitOperator& hamiltonian, std::size_t k,
                                std::optional<Sector> sector,
                                std::size_t max_qubits) {
  if (max_qubits > kOracleHardMaxQubits)
    throw ConfigError(fmt::format("oracle guardrail cannot exceed {} qubits",
                                  kOracleHardMaxQubits));
  const std::size_t nq = hamiltonian.n_qubits();
  if (nq > max_qubits)
    throw ConfigError(fmt::format(
        "{} qubits exceeds the exact-diagonalization limit of {}; use the vqe "
        "reference instead",
        nq, max_qubits));
  if (!hamiltonian.is_hermitian(1e-10))
    throw ComputeError("exact diagonalization requires a Hermitian operator");

  std::vector<std::size_t> basis;
  if (sector) {
    basis = sector_basis(nq, *sector);
  } else {
    basis.resize(std::size_t{1} << nq);
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  }
  if (basis.empty()) throw ConfigError("sector contains no basis states");

  Eigen::MatrixXcd h = dense_matrix(hamiltonian, basis);
  h = (0.5 * (h + h.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw ComputeError("dense eigensolver failed");

  const auto dim = static_cast<std::size_t>(h.rows());
  const std::size_t count = k == 0 ? dim : std::min(k, dim);
  ExactSolution sol;
  sol.sector = sector;
  for (std::size_t j = 0; j < count; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    Eigen::VectorXcd v = es.eigenvectors().col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v *= std::conj(v(arg)) / std::abs(v(arg));
    std::vector<cplx> amps(std::size_t{1} << nq);
    for (std::size_t i = 0; i < dim; ++i) amps[basis[i]] = v(static_cast<Eigen::Index>(i));
    Statevector st(nq, std::move(amps));
    sol.energies.push_back(es.eigenvalues()(col));
    sol.states.push_back(std::move(st));
  }
  return sol;
}

std::vector<cplx> exact_transition_moments(const ExactSolution& sol,
                                           const QubitOperator& op) {
  if (sol.states.empty()) throw ConfigError("exact solution has no states");
  const Statevector opsi0 = apply_operator(op.adjoint(), sol.states.front());
  std::vector<cplx> out;
  out.reserve(sol.states.size());
  for (const auto& s : sol.states) out.push_back(inner(opsi0, s));
  return out;
}

void write_energies_csv(std::ostream& out, const ExactSolution& sol) {
  out << "state_index,energy_hartree,gap_hartree,gap_ev\n";
  for (std::size_t k = 0; k < sol.energies.size(); ++k) {
    const double gap = sol.energies[k] - sol.energies.front();
    out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", k, sol.energies[k], gap,
                       units::hartree_to_ev(gap));
  }
}

}  // namespace chiralq
