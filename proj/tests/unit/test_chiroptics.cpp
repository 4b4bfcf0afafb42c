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
#include <sstream>

#include "chiralq/chiroptics.hpp"
#include "chiralq/error.hpp"
#include "chiralq/hamiltonian.hpp"
#include "chiralq/oracle.hpp"
#include "chiralq/qeom.hpp"
#include "chiralq/units.hpp"
#include "dense_oracle.hpp"

namespace chiralq {
namespace {

TEST(Units, RotatoryConversionFactor) {
  EXPECT_NEAR(units::kRotatoryAuTo1e40Cgs, 471.4436478920046, 1e-9);
  EXPECT_NEAR(units::ev_to_nm(units::hartree_to_ev(1.0)), 45.5633525, 1e-6);
}

TEST(RotatoryStrength, NegativeDotProduct) {
  EXPECT_DOUBLE_EQ(rotatory_strength({1.0, 2.0, 3.0}, {0.5, -1.0, 2.0}), -(0.5 - 2.0 + 6.0));
}

TEST(Mirror, FlipsOneDipoleAndTwoMagneticComponents) {
  const auto props =
      read_property_integrals(testing::fixture_path("synthetic_chiral.props"));
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const auto m = mirror_transform(props, axis);
    for (int a = 0; a < 3; ++a) {
      const double ds = a == static_cast<int>(axis) ? -1.0 : 1.0;
      EXPECT_EQ(m.dipole[a], ds * props.dipole[a]);
      EXPECT_EQ(m.magnetic[a], -ds * props.magnetic[a]);
    }
    const auto twice = mirror_transform(m, axis);
    for (int a = 0; a < 3; ++a) EXPECT_EQ(twice.dipole[a], props.dipole[a]);
  }
}

TEST(Mirror, CommittedMirrorFixtureMatchesTransform) {
  const auto props =
      read_property_integrals(testing::fixture_path("synthetic_chiral.props"));
  const auto mirror =
      read_property_integrals(testing::fixture_path("synthetic_chiral_mirror.props"));
  const auto m = mirror_transform(props, Axis::X);
  for (int a = 0; a < 3; ++a) {
    EXPECT_LT((m.dipole[a] - mirror.dipole[a]).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((m.magnetic[a] - mirror.magnetic[a]).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Spectrum, GaussianSumWithEnergyWeight) {
  TransitionRecord a, b;
  a.omega = 5.0 / units::kHartreeToEv;
  a.R = 2.0;
  b.omega = 7.0 / units::kHartreeToEv;
  b.R = -1.0;
  const EnergyGrid grid{4.0, 8.0, 0.5};
  const auto sp = build_spectrum({a, b}, grid, 0.3);
  ASSERT_EQ(sp.grid_ev.size(), 9u);
  for (std::size_t i = 0; i < sp.grid_ev.size(); ++i) {
    const double e = sp.grid_ev[i];
    const double expected = 5.0 * 2.0 * std::exp(-(e - 5.0) * (e - 5.0) / 0.18) -
                            7.0 * std::exp(-(e - 7.0) * (e - 7.0) / 0.18);
    EXPECT_NEAR(sp.intensity[i], expected, 1e-12);
  }
  EXPECT_THROW(build_spectrum({a}, grid, 0.0), ConfigError);
  EXPECT_THROW((EnergyGrid{3.0, 1.0, 0.1}.points()), ConfigError);
}

TEST(TransitionIo, RoundTrip) {
  TransitionRecord r;
  r.index = 3;
  r.omega = 0.321;
  r.mu = {0.1, -0.2, 0.3};
  r.m_tilde = {1e-3, 2e-3, -4e-3};
  r.R = rotatory_strength(r.mu, r.m_tilde);
  std::stringstream buf;
  write_transitions_csv(buf, {r}, true);
  const auto back = read_transitions_csv(buf);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].index, 3u);
  EXPECT_EQ(back[0].omega, r.omega);
  EXPECT_EQ(back[0].mu, r.mu);
  EXPECT_EQ(back[0].m_tilde, r.m_tilde);
  EXPECT_EQ(back[0].R, r.R);
}

TEST(TransitionMoments, ExactManifoldMatchesDenseStates) {
  const auto ints = read_fcidump(testing::fixture_path("synthetic_chiral.fcidump"));
  const auto props = read_property_integrals(testing::fixture_path("synthetic_chiral.props"));
  const auto prob = freeze_core(ints, full_active_space(ints), props);
  const auto h = build_hamiltonian(prob);

  const auto basis = testing::sector_indices(6, 2, 0);
  const auto eig = testing::sector_eigen(testing::dense_hamiltonian(prob), basis);
  std::vector<cplx> amps(64);
  for (std::size_t i = 0; i < basis.size(); ++i) amps[basis[i]] = eig.vectors(i, 0);
  const Statevector psi0(6, amps);

  const auto manifold = generate_manifold(1, 2);
  const auto sol = solve_secular(assemble_matrices(h, manifold, psi0));
  ASSERT_EQ(sol.states.size(), basis.size() - 1);
  const auto records =
      transition_moments(build_property_operators(props), manifold, sol, psi0);
  ASSERT_EQ(records.size(), sol.states.size());

  const Eigen::VectorXcd v0 = testing::embed(eig.vectors.col(0), basis, 64);
  std::array<testing::DenseMat, 3> d, m;
  for (int a = 0; a < 3; ++a) {
    d[a] = testing::dense_one_body(props.dipole[a], false);
    m[a] = testing::dense_one_body(props.magnetic[a], false);
  }
  double max_r = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    EXPECT_NEAR(records[k].omega, eig.values[k + 1] - eig.values[0], 1e-9);
    const Eigen::VectorXcd vk = testing::embed(eig.vectors.col(k + 1), basis, 64);
    double mu2 = 0.0, r = 0.0;
    for (int a = 0; a < 3; ++a) {
      const cplx mu = v0.dot(d[a] * vk);
      const cplx mt = v0.dot(m[a] * vk);
      mu2 += std::norm(mu);
      r += -(mu * mt).real();
    }
    double rec_mu2 = 0.0;
    for (int a = 0; a < 3; ++a) rec_mu2 += records[k].mu[a] * records[k].mu[a];
    EXPECT_NEAR(rec_mu2, mu2, 1e-9) << k;
    EXPECT_NEAR(records[k].R, r, 1e-9) << k;
    max_r = std::max(max_r, std::abs(r));
  }
  EXPECT_GT(max_r, 1e-4);
}

}  // namespace
}  // namespace chiralq
