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

#include "chiralq/error.hpp"
#include "chiralq/hamiltonian.hpp"
#include "chiralq/model_io.hpp"
#include "chiralq/vqe.hpp"
#include "dense_oracle.hpp"

namespace chiralq {
namespace {

struct Problem {
  ActiveSpaceProblem prob;
  QubitOperator h;
};

Problem load(const std::string& name) {
  const auto ints = read_fcidump(testing::fixture_path(name + ".fcidump"));
  Problem p{freeze_core(ints, full_active_space(ints)), {}};
  p.h = build_hamiltonian(p.prob);
  return p;
}

AnsatzSpec spec_for(const ActiveSpaceProblem& prob, std::size_t layers) {
  AnsatzSpec s;
  s.n_qubits = prob.n_qubits();
  s.layers = layers;
  s.occupied_modes = reference_occupied_modes(prob.n_active_orbitals, prob.n_active_electrons);
  return s;
}

TEST(Ansatz, ParameterAndGateCounts) {
  AnsatzSpec s;
  s.n_qubits = 4;
  s.layers = 3;
  s.occupied_modes = {0, 2};
  const auto c = build_ansatz(s);
  EXPECT_EQ(s.n_params(), 16u);
  EXPECT_EQ(c.n_params(), 16u);
  EXPECT_EQ(c.count_cnots(), 12u);
  s.entanglement = Entanglement::Linear;
  EXPECT_EQ(build_ansatz(s).count_cnots(), 9u);
  EXPECT_EQ(build_ansatz(s).gates().size(), 2u + 16u + 9u);
}

TEST(Ansatz, GateOrder) {
  AnsatzSpec s;
  s.n_qubits = 3;
  s.layers = 1;
  s.occupied_modes = {1};
  const auto circ = build_ansatz(s);
  const auto& g = circ.gates();
  ASSERT_EQ(g.size(), 1u + 3u + 3u + 3u);
  EXPECT_EQ(std::get<PauliXGate>(g[0]).qubit, 1u);
  for (std::size_t q = 0; q < 3; ++q) {
    EXPECT_EQ(std::get<RyGate>(g[1 + q]).qubit, q);
    EXPECT_EQ(std::get<RyGate>(g[1 + q]).param, q);
  }
  EXPECT_EQ(std::get<CnotGate>(g[4]).control, 0u);
  EXPECT_EQ(std::get<CnotGate>(g[5]).control, 1u);
  EXPECT_EQ(std::get<CnotGate>(g[6]).control, 2u);
  EXPECT_EQ(std::get<CnotGate>(g[6]).target, 0u);
  EXPECT_EQ(std::get<RyGate>(g[9]).param, 5u);
}

TEST(Ansatz, ValidationErrors) {
  AnsatzSpec s;
  s.n_qubits = 4;
  s.occupied_modes = {0, 4};
  EXPECT_THROW(s.validate(), RangeError);
  s.occupied_modes = {1, 1};
  EXPECT_THROW(s.validate(), ConfigError);
  EXPECT_THROW(parse_entanglement("full"), ConfigError);
}

TEST(Ansatz, ZeroLayersAtZeroAnglesIsHartreeFock) {
  for (const std::string name : {"h2", "h4", "synthetic_chiral"}) {
    const auto p = load(name);
    const auto spec = spec_for(p.prob, 0);
    const std::vector<double> theta(spec.n_params(), 0.0);
    const auto psi = apply_circuit(build_ansatz(spec), theta, Statevector(spec.n_qubits));
    EXPECT_NEAR(expectation(p.h, psi), mean_field_energy(p.prob), 1e-10) << name;
  }
}

TEST(Penalty, CountsParticleNumberDeviation) {
  Statevector s(4);
  s.apply_x(0);
  s.apply_x(2);
  EXPECT_DOUBLE_EQ(number_penalty(s, 2), 0.0);
  EXPECT_DOUBLE_EQ(number_penalty(s, 1), 1.0);
  EXPECT_DOUBLE_EQ(number_penalty(s, 4), 4.0);
}

TEST(Vqe, HydrogenReachesGroundState) {
  const auto p = load("h2");
  const auto ref = testing::read_reference("h2.ref.csv");
  const auto r = minimize_energy(p.h, spec_for(p.prob, 3));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.energy, ref.at("fci_energy_0"), 1e-4);
  EXPECT_GE(r.energy, ref.at("fci_energy_0") - 1e-9);
  EXPECT_EQ(r.energy_history.size(), r.iterations);
  EXPECT_EQ(r.theta_opt.size(), 16u);
  EXPECT_NEAR(expectation(p.h, r.final_state), r.energy, 1e-12);
}

TEST(Vqe, FixedSeedIsReproducible) {
  const auto p = load("h2");
  VqeOptions opt;
  opt.seed = 123;
  opt.max_iter = 500;
  const auto a = minimize_energy(p.h, spec_for(p.prob, 2), opt);
  const auto b = minimize_energy(p.h, spec_for(p.prob, 2), opt);
  EXPECT_EQ(a.theta_opt, b.theta_opt);
  EXPECT_EQ(a.energy_history, b.energy_history);
}

TEST(Vqe, ShardedEvaluationGivesSameEnergy) {
  const auto p = load("h2");
  VqeOptions opt;
  opt.max_iter = 300;
  opt.restarts = 1;
  const auto plain = minimize_energy(p.h, spec_for(p.prob, 3), opt);
  opt.shards = 3;
  const auto sharded = minimize_energy(p.h, spec_for(p.prob, 3), opt);
  EXPECT_NEAR(plain.energy, sharded.energy, 1e-9);
}

TEST(Vqe, RegisterMismatchIsDimensionError) {
  const auto p = load("h2");
  AnsatzSpec s;
  s.n_qubits = 6;
  s.occupied_modes = {0, 3};
  EXPECT_THROW(minimize_energy(p.h, s), DimensionError);
}

}  // namespace
}  // namespace chiralq
