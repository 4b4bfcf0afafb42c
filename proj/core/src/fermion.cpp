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

#include "chiralq/fermion.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {
namespace {

/// True when `a` must move to the right of `b` in normal order.
bool out_of_order(const Ladder& a, const Ladder& b) {
  if (a.dagger != b.dagger) return !a.dagger;
  return a.mode < b.mode;
}

struct LadderListLess {
  bool operator()(const std::vector<Ladder>& a,
                  const std::vector<Ladder>& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](const Ladder& x, const Ladder& y) {
          return std::pair(x.dagger, x.mode) < std::pair(y.dagger, y.mode);
        });
  }
};

}  // namespace

std::size_t FermionOperator::max_mode() const noexcept {
  std::size_t m = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.factors) m = std::max(m, f.mode);
  return m;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& t : terms_) {
    std::vector<Ladder> factors(t.factors.rbegin(), t.factors.rend());
    for (auto& f : factors) f.dagger = !f.dagger;
    out.add(std::conj(t.coeff), std::move(factors));
  }
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      std::vector<Ladder> factors = ta.factors;
      factors.insert(factors.end(), tb.factors.begin(), tb.factors.end());
      out.add(ta.coeff * tb.coeff, std::move(factors));
    }
  return out;
}

FermionOperator normal_ordered(const FermionOperator& op) {
  std::map<std::vector<Ladder>, cplx, LadderListLess> merged;
  std::vector<FermionTerm> work(op.terms().rbegin(), op.terms().rend());

  while (!work.empty()) {
    FermionTerm term = std::move(work.back());
    work.pop_back();
    bool reordered = false;
    for (std::size_t i = 0; i + 1 < term.factors.size(); ++i) {
      const Ladder a = term.factors[i];
      const Ladder b = term.factors[i + 1];
      if (a.dagger == b.dagger && a.mode == b.mode) {
        // a_p a_p = a_p^dag a_p^dag = 0
        reordered = true;
        break;
      }
      if (!out_of_order(a, b)) continue;
      if (!a.dagger && b.dagger && a.mode == b.mode) {
        // a_p a_p^dag = 1 - a_p^dag a_p
        FermionTerm contracted{term.coeff, {}};
        contracted.factors.insert(contracted.factors.end(), term.factors.begin(),
                                  term.factors.begin() + static_cast<long>(i));
        contracted.factors.insert(contracted.factors.end(),
                                  term.factors.begin() + static_cast<long>(i) + 2,
                                  term.factors.end());
        work.push_back(std::move(contracted));
      }
      std::swap(term.factors[i], term.factors[i + 1]);
      term.coeff = -term.coeff;
      work.push_back(std::move(term));
      reordered = true;
      break;
    }
    if (!reordered) merged[term.factors] += term.coeff;
  }

  FermionOperator out;
  for (auto& [factors, coeff] : merged) {
    if (std::abs(coeff) > kPruneTolerance) out.add(coeff, factors);
  }
  return out;
}

QubitOperator jordan_wigner(const Ladder& factor, std::size_t n_modes) {
  if (factor.mode >= n_modes) {
    throw RangeError(fmt::format("mode {} outside a {}-mode register",
                                 factor.mode, n_modes));
  }
  const std::uint64_t string = (std::uint64_t{1} << factor.mode) - 1;
  const std::uint64_t bit = std::uint64_t{1} << factor.mode;
  QubitOperator out(n_modes);
  out.add_term(PauliWord{bit, string}, 0.5);
  out.add_term(PauliWord{bit, string | bit}, factor.dagger ? cplx{0.0, -0.5}
                                                           : cplx{0.0, 0.5});
  return out;
}

QubitOperator jordan_wigner(const FermionOperator& op, std::size_t n_modes) {
  std::vector<QubitOperator> cache(2 * n_modes);
  auto ladder = [&](const Ladder& f) -> const QubitOperator& {
    if (f.mode >= n_modes) {
      throw RangeError(fmt::format("mode {} outside a {}-mode register", f.mode,
                                   n_modes));
    }
    auto& slot = cache[2 * f.mode + (f.dagger ? 1 : 0)];
    if (slot.empty()) slot = jordan_wigner(f, n_modes);
    return slot;
  };

  QubitOperator out(n_modes);
  for (const auto& term : op.terms()) {
    QubitOperator product = QubitOperator::identity(n_modes, term.coeff);
    for (const auto& f : term.factors) {
      product = product * ladder(f);
      if (product.empty()) break;
    }
    out += product;
  }
  return out.simplify();
}

}  // namespace chiralq
