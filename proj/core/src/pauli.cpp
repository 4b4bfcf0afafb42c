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

#include "chiralq/pauli.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {
namespace {

int letter_code(const PauliWord& w, std::size_t q) noexcept {
  const bool x = (w.x >> q) & 1U;
  const bool z = (w.z >> q) & 1U;
  if (z) return x ? 2 : 3;
  return x ? 1 : 0;
}

}  // namespace

PauliWord PauliWord::single(std::size_t qubit, char letter) {
  if (qubit >= 64) throw RangeError("qubit index exceeds 63");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I':
      return {};
    case 'X':
      return {bit, 0};
    case 'Y':
      return {bit, bit};
    case 'Z':
      return {0, bit};
    default:
      throw Error(ErrorCategory::Parse,
                  std::string("invalid Pauli letter '") + letter + "'");
  }
}

PauliWord PauliWord::from_string(const std::string& letters) {
  PauliWord w;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const PauliWord s = single(q, letters[q]);
    w.x |= s.x;
    w.z |= s.z;
  }
  return w;
}

char PauliWord::letter(std::size_t qubit) const noexcept {
  return "IXYZ"[letter_code(*this, qubit)];
}

std::string PauliWord::to_string(std::size_t n_qubits) const {
  std::string s(n_qubits, 'I');
  for (std::size_t q = 0; q < n_qubits; ++q) s[q] = letter(q);
  return s;
}

int PauliWord::y_count() const noexcept { return std::popcount(x & z); }

bool PauliWordLess::operator()(const PauliWord& a,
                               const PauliWord& b) const noexcept {
  const std::uint64_t diff = (a.x ^ b.x) | (a.z ^ b.z);
  if (diff == 0) return false;
  const auto q = static_cast<std::size_t>(std::countr_zero(diff));
  return letter_code(a, q) < letter_code(b, q);
}

PauliProduct multiply(const PauliWord& a, const PauliWord& b) noexcept {
  PauliProduct out;
  out.word = {a.x ^ b.x, a.z ^ b.z};
  const int turns = a.y_count() + b.y_count() - out.word.y_count() +
                    2 * std::popcount(a.z & b.x);
  out.quarter_turns = ((turns % 4) + 4) % 4;
  return out;
}

bool commutes(const PauliWord& a, const PauliWord& b) noexcept {
  return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) % 2 == 0;
}

cplx phase_of(int quarter_turns) noexcept {
  switch (((quarter_turns % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

QubitOperator::QubitOperator(std::size_t n_qubits, PauliWord word, cplx coeff)
    : n_qubits_(n_qubits) {
  add_term(word, coeff);
}

QubitOperator QubitOperator::identity(std::size_t n_qubits, cplx coeff) {
  return QubitOperator(n_qubits, PauliWord::identity(), coeff);
}

std::vector<std::pair<PauliWord, cplx>> QubitOperator::term_list() const {
  return {terms_.begin(), terms_.end()};
}

cplx QubitOperator::coefficient(const PauliWord& word) const {
  const auto it = terms_.find(word);
  return it == terms_.end() ? cplx{} : it->second;
}

void QubitOperator::add_term(const PauliWord& word, cplx coeff) {
  if (n_qubits_ < 64 && ((word.x | word.z) >> n_qubits_) != 0) {
    throw RangeError(fmt::format("Pauli word acts outside a {}-qubit register",
                                 n_qubits_));
  }
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) it->second += coeff;
}

QubitOperator& QubitOperator::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  return *this;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out(n_qubits_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, std::conj(c));
  return out;
}

bool QubitOperator::is_hermitian(double tol) const noexcept {
  return max_imag() <= tol;
}

double QubitOperator::max_imag() const noexcept {
  double worst = 0.0;
  for (const auto& [w, c] : terms_) worst = std::max(worst, std::abs(c.imag()));
  return worst;
}

double QubitOperator::norm() const noexcept {
  double sum = 0.0;
  for (const auto& [w, c] : terms_) sum += std::norm(c);
  return std::sqrt(sum);
}

double QubitOperator::one_norm() const noexcept {
  double sum = 0.0;
  for (const auto& [w, c] : terms_) sum += std::abs(c);
  return sum;
}

void QubitOperator::require_same_register(const QubitOperator& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw DimensionError(fmt::format("qubit-count mismatch: {} vs {}", n_qubits_,
                                     other.n_qubits_));
  }
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  require_same_register(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return simplify();
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  require_same_register(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return simplify();
}

QubitOperator& QubitOperator::operator*=(cplx scale) {
  for (auto& [w, c] : terms_) c *= scale;
  return simplify();
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  a.require_same_register(b);
  QubitOperator out(a.n_qubits_);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      const PauliProduct p = multiply(wa, wb);
      out.add_term(p.word, phase_of(p.quarter_turns) * ca * cb);
    }
  }
  return out.simplify();
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(fmt::format("qubit-count mismatch: {} vs {}",
                                     a.n_qubits(), b.n_qubits()));
  }
  // Only anticommuting word pairs survive: [P, Q] = 2PQ when {P, Q} = 0.
  QubitOperator out(a.n_qubits());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (commutes(wa, wb)) continue;
      const PauliProduct p = multiply(wa, wb);
      out.add_term(p.word, 2.0 * phase_of(p.quarter_turns) * ca * cb);
    }
  }
  return out.simplify();
}

QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(fmt::format("qubit-count mismatch: {} vs {}",
                                     a.n_qubits(), b.n_qubits()));
  }
  QubitOperator out(a.n_qubits());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (!commutes(wa, wb)) continue;
      const PauliProduct p = multiply(wa, wb);
      out.add_term(p.word, 2.0 * phase_of(p.quarter_turns) * ca * cb);
    }
  }
  return out.simplify();
}

void write_qubit_operator(std::ostream& out, const QubitOperator& op) {
  // The map order is the lexicographic order of the printed words.
  for (const auto& [w, c] : op.terms()) {
    out << fmt::format("{:.17g} {:.17g} {}\n", c.real(), c.imag(),
                       w.to_string(op.n_qubits()));
  }
}

QubitOperator read_qubit_operator(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<QubitOperator> op;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    std::string word;
    if (!(ls >> re)) continue;
    if (!(ls >> im >> word)) {
      throw ParseError("expected 'coeff_re coeff_im WORD'", line_no);
    }
    if (!op) op.emplace(word.size());
    if (word.size() != op->n_qubits()) {
      throw ParseError("Pauli word length differs from earlier lines", line_no);
    }
    try {
      op->add_term(PauliWord::from_string(word), {re, im});
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return op ? *op : QubitOperator{};
}

}  // namespace chiralq
