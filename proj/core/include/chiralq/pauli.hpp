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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chiralq {

using cplx = std::complex<double>;

/// Default magnitude below which coefficients are dropped by simplify().
inline constexpr double kPruneTolerance = 1e-12;

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit j carries X^x_j Z^z_j up to phase: (x,z) = (0,0) I, (1,0) X,
/// (1,1) Y, (0,1) Z. The word is P = i^{|x & z|} X^x Z^z, so every word is
/// Hermitian and squares to the identity.
struct PauliWord {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliWord identity() noexcept { return {}; }
  static PauliWord single(std::size_t qubit, char letter);
  /// Parses a string such as "XZYI"; character k acts on qubit k.
  static PauliWord from_string(const std::string& letters);

  char letter(std::size_t qubit) const noexcept;
  std::string to_string(std::size_t n_qubits) const;
  bool is_identity() const noexcept { return x == 0 && z == 0; }
  bool is_diagonal() const noexcept { return x == 0; }
  int y_count() const noexcept;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
};

/// Canonical order: lexicographic over qubits 0,1,2,... with I < X < Y < Z,
/// which is the order of the printed strings.
struct PauliWordLess {
  bool operator()(const PauliWord& a, const PauliWord& b) const noexcept;
};

/// P_a * P_b = phase * P_c with phase in {1, i, -1, -i}.
struct PauliProduct {
  int quarter_turns = 0;  // phase = i^quarter_turns
  PauliWord word;
};
PauliProduct multiply(const PauliWord& a, const PauliWord& b) noexcept;
bool commutes(const PauliWord& a, const PauliWord& b) noexcept;
cplx phase_of(int quarter_turns) noexcept;

/// Weighted sum of Pauli words on a fixed register.
class QubitOperator {
 public:
  using TermMap = std::map<PauliWord, cplx, PauliWordLess>;

  QubitOperator() = default;
  explicit QubitOperator(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  QubitOperator(std::size_t n_qubits, PauliWord word, cplx coeff = 1.0);

  static QubitOperator identity(std::size_t n_qubits, cplx coeff = 1.0);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }

  /// Terms in canonical order; shard plans index into this list.
  std::vector<std::pair<PauliWord, cplx>> term_list() const;

  cplx coefficient(const PauliWord& word) const;
  void add_term(const PauliWord& word, cplx coeff);

  /// Removes coefficients with magnitude <= tol.
  QubitOperator& simplify(double tol = kPruneTolerance);

  QubitOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const noexcept;
  /// Largest |Im c_k|.
  double max_imag() const noexcept;
  /// sqrt(sum |c_k|^2), the normalized Frobenius norm of the matrix.
  double norm() const noexcept;
  /// Sum |c_k|.
  double one_norm() const noexcept;

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(cplx scale);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) {
    a += b;
    return a;
  }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) {
    a -= b;
    return a;
  }
  friend QubitOperator operator*(QubitOperator a, cplx s) {
    a *= s;
    return a;
  }
  friend QubitOperator operator*(cplx s, QubitOperator a) {
    a *= s;
    return a;
  }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

 private:
  void require_same_register(const QubitOperator& other) const;

  std::size_t n_qubits_ = 0;
  TermMap terms_;
};

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);
QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b);

/// Text dump: one `coeff_re coeff_im WORD` line per term, sorted by word.
void write_qubit_operator(std::ostream& out, const QubitOperator& op);
QubitOperator read_qubit_operator(std::istream& in);

}  // namespace chiralq
