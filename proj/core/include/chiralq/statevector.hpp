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
#include <span>
#include <variant>
#include <vector>

#include "chiralq/pauli.hpp"

namespace chiralq {

/// Allocation ceiling; 2^26 complex doubles is about 1 GiB.
inline constexpr std::size_t kDefaultMaxQubits = 26;

/// 2^n complex amplitudes, little-endian: qubit q is bit q of the index.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0>
  explicit Statevector(std::size_t n_qubits,
                       std::size_t max_qubits = kDefaultMaxQubits);
  Statevector(std::size_t n_qubits, std::vector<cplx> amplitudes,
              std::size_t max_qubits = kDefaultMaxQubits);

  static Statevector basis_state(std::size_t n_qubits, std::size_t index,
                                 std::size_t max_qubits = kDefaultMaxQubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t i) const noexcept { return amps_[i]; }
  cplx& operator[](std::size_t i) noexcept { return amps_[i]; }

  double norm() const noexcept;
  void normalize();

  void apply_x(std::size_t q) noexcept;
  void apply_ry(std::size_t q, double theta) noexcept;
  void apply_cnot(std::size_t control, std::size_t target) noexcept;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// <a|b>
cplx inner(const Statevector& a, const Statevector& b);

struct PauliXGate {
  std::size_t qubit;
};
struct RyGate {
  std::size_t qubit;
  std::size_t param;
};
struct CnotGate {
  std::size_t control;
  std::size_t target;
};
using Gate = std::variant<PauliXGate, RyGate, CnotGate>;

class Circuit {
 public:
  Circuit(std::size_t n_qubits, std::size_t n_params)
      : n_qubits_(n_qubits), n_params_(n_params) {}

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Validates qubit and parameter indices; throws RangeError.
  void add(const Gate& gate);

  std::size_t count_cnots() const noexcept;

 private:
  std::size_t n_qubits_;
  std::size_t n_params_;
  std::vector<Gate> gates_;
};

/// Ry(theta) = [[cos theta/2, -sin theta/2], [sin theta/2, cos theta/2]].
Statevector apply_circuit(const Circuit& circ, std::span<const double> theta,
                          Statevector state);
void apply_circuit_inplace(const Circuit& circ, std::span<const double> theta,
                           Statevector& state);

/// <psi|P|psi> for a single Pauli word.
cplx expectation(const PauliWord& word, const Statevector& state);

/// sum_k c_k <psi|P_k|psi>; works for any operator.
cplx expectation_complex(const QubitOperator& op, const Statevector& state);

/// Real expectation of a Hermitian operator. Coefficients with imaginary
/// part above 1e-12 are rejected; an imaginary residue above 1e-10 in the
/// result is an error.
double expectation(const QubitOperator& op, const Statevector& state);

/// sum_k c_k P_k |psi>; not normalized.
Statevector apply_operator(const QubitOperator& op, const Statevector& state);

}  // namespace chiralq
