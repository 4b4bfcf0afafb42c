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

#include "chiralq/statevector.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {
namespace {

void check_qubits(std::size_t n_qubits, std::size_t max_qubits) {
  if (n_qubits > max_qubits) {
    throw ConfigError(fmt::format(
        "{} qubits exceeds the statevector ceiling of {} (2^{} amplitudes)",
        n_qubits, max_qubits, n_qubits));
  }
  if (n_qubits >= 63) throw RangeError("qubit count too large to index");
}

inline double parity_sign(std::uint64_t bits) noexcept {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

Statevector::Statevector(std::size_t n_qubits, std::size_t max_qubits)
    : n_qubits_(n_qubits) {
  check_qubits(n_qubits, max_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

Statevector::Statevector(std::size_t n_qubits, std::vector<cplx> amplitudes,
                         std::size_t max_qubits)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubits(n_qubits, max_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionError(fmt::format("{} amplitudes given for {} qubits",
                                     amps_.size(), n_qubits));
  }
}

Statevector Statevector::basis_state(std::size_t n_qubits, std::size_t index,
                                     std::size_t max_qubits) {
  Statevector s(n_qubits, max_qubits);
  if (index >= s.dim()) throw RangeError("basis index outside the register");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm() const noexcept {
  double sum = 0.0;
  for (const cplx& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw ComputeError("cannot normalize the zero vector");
  for (cplx& a : amps_) a /= n;
}

void Statevector::apply_x(std::size_t q) noexcept {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void Statevector::apply_ry(std::size_t q, double theta) noexcept {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | bit];
    amps_[i] = c * a0 - s * a1;
    amps_[i | bit] = s * a0 + c * a1;
  }
}

void Statevector::apply_cnot(std::size_t control, std::size_t target) noexcept {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

cplx inner(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("inner product of states on different registers");
  }
  cplx sum{};
  const auto aa = a.amplitudes();
  const auto bb = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) sum += std::conj(aa[i]) * bb[i];
  return sum;
}

void Circuit::add(const Gate& gate) {
  auto check = [&](std::size_t q) {
    if (q >= n_qubits_) {
      throw RangeError(fmt::format("gate qubit {} outside a {}-qubit circuit", q,
                                   n_qubits_));
    }
  };
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PauliXGate>) {
          check(g.qubit);
        } else if constexpr (std::is_same_v<T, RyGate>) {
          check(g.qubit);
          if (g.param >= n_params_) {
            throw RangeError(fmt::format("parameter index {} outside [0, {})",
                                         g.param, n_params_));
          }
        } else {
          check(g.control);
          check(g.target);
          if (g.control == g.target) {
            throw RangeError("CNOT control equals target");
          }
        }
      },
      gate);
  gates_.push_back(gate);
}

std::size_t Circuit::count_cnots() const noexcept {
  std::size_t n = 0;
  for (const auto& g : gates_) n += std::holds_alternative<CnotGate>(g) ? 1 : 0;
  return n;
}

void apply_circuit_inplace(const Circuit& circ, std::span<const double> theta,
                           Statevector& state) {
  if (theta.size() != circ.n_params()) {
    throw DimensionError(fmt::format("{} parameters given, circuit needs {}",
                                     theta.size(), circ.n_params()));
  }
  if (state.n_qubits() != circ.n_qubits()) {
    throw DimensionError(fmt::format("{}-qubit state for a {}-qubit circuit",
                                     state.n_qubits(), circ.n_qubits()));
  }
  for (const auto& gate : circ.gates()) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, PauliXGate>) {
            state.apply_x(g.qubit);
          } else if constexpr (std::is_same_v<T, RyGate>) {
            state.apply_ry(g.qubit, theta[g.param]);
          } else {
            state.apply_cnot(g.control, g.target);
          }
        },
        gate);
  }
}

Statevector apply_circuit(const Circuit& circ, std::span<const double> theta,
                          Statevector state) {
  apply_circuit_inplace(circ, theta, state);
  return state;
}

cplx expectation(const PauliWord& word, const Statevector& state) {
  const auto psi = state.amplitudes();
  const std::size_t dim = psi.size();
  if (word.is_diagonal()) {
    double sum = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      sum += parity_sign(b & word.z) * std::norm(psi[b]);
    }
    return sum;
  }
  cplx sum{};
  for (std::size_t b = 0; b < dim; ++b) {
    sum += std::conj(psi[b ^ word.x]) * (parity_sign(b & word.z) * psi[b]);
  }
  return phase_of(word.y_count()) * sum;
}

cplx expectation_complex(const QubitOperator& op, const Statevector& state) {
  if (op.n_qubits() != state.n_qubits()) {
    throw DimensionError(fmt::format("{}-qubit operator on a {}-qubit state",
                                     op.n_qubits(), state.n_qubits()));
  }
  cplx sum{};
  for (const auto& [w, c] : op.terms()) sum += c * expectation(w, state);
  return sum;
}

double expectation(const QubitOperator& op, const Statevector& state) {
  if (op.max_imag() > 1e-12) {
    throw ComputeError(fmt::format(
        "operator is not Hermitian (max |Im c| = {:.3e}); use "
        "expectation_complex",
        op.max_imag()));
  }
  const cplx v = expectation_complex(op, state);
  if (std::abs(v.imag()) > 1e-10) {
    throw ComputeError(
        fmt::format("expectation has imaginary residue {:.3e}", v.imag()));
  }
  return v.real();
}

Statevector apply_operator(const QubitOperator& op, const Statevector& state) {
  if (op.n_qubits() != state.n_qubits()) {
    throw DimensionError(fmt::format("{}-qubit operator on a {}-qubit state",
                                     op.n_qubits(), state.n_qubits()));
  }
  const auto psi = state.amplitudes();
  std::vector<cplx> out(psi.size(), cplx{});
  for (const auto& [w, c] : op.terms()) {
    const cplx scaled = c * phase_of(w.y_count());
    for (std::size_t b = 0; b < psi.size(); ++b) {
      out[b ^ w.x] += scaled * (parity_sign(b & w.z) * psi[b]);
    }
  }
  return Statevector(state.n_qubits(), std::move(out), state.n_qubits());
}

}  // namespace chiralq
