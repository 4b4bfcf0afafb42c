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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chiralq/error.hpp"
#include "chiralq/sharding.hpp"
#include "chiralq/statevector.hpp"
#include "dense_oracle.hpp"

namespace chiralq {
namespace {

Eigen::VectorXcd as_vector(const Statevector& s) {
  Eigen::VectorXcd v(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v(i) = s[i];
  return v;
}

TEST(Statevector, StartsInZeroState) {
  const Statevector s(3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s[0], cplx(1.0));
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
}

TEST(Statevector, RejectsOversizedRegister) {
  EXPECT_THROW(Statevector(40), ConfigError);
}

TEST(Statevector, AmplitudeCountMustMatch) {
  EXPECT_ANY_THROW(Statevector(2, std::vector<cplx>(3)));
}

TEST(Statevector, GatesFollowLittleEndianConvention) {
  Statevector s(3);
  s.apply_x(1);
  EXPECT_EQ(s[2], cplx(1.0));
  s.apply_cnot(1, 2);
  EXPECT_EQ(s[6], cplx(1.0));
  s.apply_cnot(0, 1);
  EXPECT_EQ(s[6], cplx(1.0));
}

TEST(Statevector, RyMatchesRotationMatrix) {
  Statevector s(1);
  s.apply_ry(0, std::numbers::pi / 3);
  EXPECT_NEAR(s[0].real(), std::cos(std::numbers::pi / 6), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(std::numbers::pi / 6), 1e-15);
}

TEST(Statevector, CircuitMatchesDenseGates) {
  Circuit c(3, 2);
  c.add(PauliXGate{0});
  c.add(RyGate{1, 0});
  c.add(CnotGate{1, 2});
  c.add(RyGate{2, 1});
  c.add(CnotGate{2, 0});
  const std::vector<double> theta{0.3, -1.1};
  const auto out = as_vector(apply_circuit(c, theta, Statevector(3)));

  auto ry = [](double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
  };
  auto on = [](const Eigen::Matrix2cd& g, std::size_t q) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = 0; k < 3; ++k) {
      const Eigen::Matrix2cd f = k == q ? g : Eigen::Matrix2cd::Identity();
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = f(i, j) * m;
      m = next;
    }
    return m;
  };
  auto cnot = [](std::size_t ctl, std::size_t tgt) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
      m((i >> ctl) & 1 ? i ^ (std::size_t{1} << tgt) : i, i) = 1.0;
    return m;
  };
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = 1.0;
  v = cnot(2, 0) * on(ry(-1.1), 2) * cnot(1, 2) * on(ry(0.3), 1) * on(x, 0) * v;
  EXPECT_LT((out - v).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(c.count_cnots(), 2u);
}

TEST(Statevector, CircuitRejectsBadIndices) {
  Circuit c(2, 1);
  EXPECT_THROW(c.add(RyGate{2, 0}), RangeError);
  EXPECT_THROW(c.add(RyGate{0, 1}), RangeError);
  EXPECT_ANY_THROW(c.add(CnotGate{1, 1}));
}

TEST(Statevector, ExpectationMatchesDense) {
  const auto op = random_pauli_operator(6, 40, 3);
  const auto psi = random_state(6, 4);
  const auto v = as_vector(psi);
  const auto dense = testing::dense_operator(op);
  const cplx ref = v.dot(dense * v);
  EXPECT_NEAR(expectation(op, psi), ref.real(), 1e-13);
  EXPECT_NEAR(std::abs(ref.imag()), 0.0, 1e-13);
  const auto applied = as_vector(apply_operator(op, psi));
  EXPECT_LT((applied - dense * v).cwiseAbs().maxCoeff(), 1e-13);
  for (const auto& [w, c] : op.terms()) {
    const cplx e = expectation(w, psi);
    const cplx d = v.dot(testing::dense_pauli(w, 6) * v);
    EXPECT_LT(std::abs(e - d), 1e-14);
  }
}

TEST(Statevector, InnerProductConjugatesLeft) {
  Statevector a(1, {cplx(0, 1), 0.0}), b(1, {1.0, 0.0});
  EXPECT_EQ(inner(a, b), cplx(0, -1));
}

}  // namespace
}  // namespace chiralq
