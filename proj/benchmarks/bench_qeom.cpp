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

#include <benchmark/benchmark.h>

#include "chiralq/hamiltonian.hpp"
#include "chiralq/model_io.hpp"
#include "chiralq/qeom.hpp"
#include "chiralq/vqe.hpp"

#ifndef CHIRALQ_FIXTURE_DIR
#define CHIRALQ_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

using namespace chiralq;

struct H4Fixture {
  QubitOperator hamiltonian;
  Statevector reference;
  ExcitationManifold manifold;

  H4Fixture() {
    const auto ints = read_fcidump(CHIRALQ_FIXTURE_DIR "/h4.fcidump");
    const auto prob = freeze_core(ints, full_active_space(ints));
    hamiltonian = build_hamiltonian(prob);
    reference = Statevector(prob.n_qubits());
    for (auto q : reference_occupied_modes(prob.n_active_orbitals, prob.n_active_electrons))
      reference.apply_x(q);
    manifold = generate_manifold(2, 2);
  }
};

const H4Fixture& h4() {
  static const H4Fixture f;
  return f;
}

void BM_AssembleMatrices(benchmark::State& state) {
  const auto& f = h4();
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_matrices(f.hamiltonian, f.manifold, f.reference));
}
BENCHMARK(BM_AssembleMatrices)->Unit(benchmark::kMillisecond);

void BM_SolveSecular(benchmark::State& state) {
  const auto& f = h4();
  const auto mats = assemble_matrices(f.hamiltonian, f.manifold, f.reference);
  for (auto _ : state) benchmark::DoNotOptimize(solve_secular(mats));
}
BENCHMARK(BM_SolveSecular)->Unit(benchmark::kMicrosecond);

void BM_AnsatzEnergy(benchmark::State& state) {
  const auto& f = h4();
  AnsatzSpec spec;
  spec.n_qubits = 8;
  spec.occupied_modes = {0, 1, 4, 5};
  const Circuit circ = build_ansatz(spec);
  std::vector<double> theta(spec.n_params(), 0.1);
  for (auto _ : state) {
    const Statevector psi = apply_circuit(circ, theta, Statevector(spec.n_qubits));
    benchmark::DoNotOptimize(expectation(f.hamiltonian, psi));
  }
}
BENCHMARK(BM_AnsatzEnergy)->Unit(benchmark::kMicrosecond);

}  // namespace
