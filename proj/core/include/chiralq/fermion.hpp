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
#include <vector>

#include "chiralq/pauli.hpp"

namespace chiralq {

struct Ladder {
  std::size_t mode = 0;
  bool dagger = false;

  friend bool operator==(const Ladder&, const Ladder&) = default;
};

inline Ladder create(std::size_t mode) { return {mode, true}; }
inline Ladder annihilate(std::size_t mode) { return {mode, false}; }

struct FermionTerm {
  cplx coeff{1.0, 0.0};
  std::vector<Ladder> factors;  // applied right to left, as written
};

/// Sum of products of creation/annihilation operators.
class FermionOperator {
 public:
  FermionOperator() = default;
  FermionOperator(cplx coeff, std::vector<Ladder> factors) {
    add(coeff, std::move(factors));
  }

  const std::vector<FermionTerm>& terms() const noexcept { return terms_; }
  void add(cplx coeff, std::vector<Ladder> factors) {
    terms_.push_back({coeff, std::move(factors)});
  }

  std::size_t max_mode() const noexcept;
  FermionOperator adjoint() const;

  FermionOperator& operator+=(const FermionOperator& other);
  friend FermionOperator operator*(const FermionOperator& a,
                                   const FermionOperator& b);

 private:
  std::vector<FermionTerm> terms_;
};

/// Rewrites every product with creators left of annihilators and indices
/// strictly decreasing inside each group, merging identical products.
/// Operator action is unchanged.
FermionOperator normal_ordered(const FermionOperator& op);

/// a_p -> Z_0 ... Z_{p-1} (X_p + i Y_p) / 2,
/// a_p^dagger -> Z_0 ... Z_{p-1} (X_p - i Y_p) / 2.
QubitOperator jordan_wigner(const FermionOperator& op, std::size_t n_modes);
QubitOperator jordan_wigner(const Ladder& factor, std::size_t n_modes);

}  // namespace chiralq
