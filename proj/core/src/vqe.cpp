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

#include "chiralq/vqe.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <set>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {

const char* to_string(Entanglement e) noexcept {
  return e == Entanglement::Linear ? "linear" : "circular";
}

Entanglement parse_entanglement(const std::string& text) {
  if (text == "linear") return Entanglement::Linear;
  if (text == "circular") return Entanglement::Circular;
  throw ConfigError(fmt::format("unknown entanglement pattern '{}'", text));
}

void AnsatzSpec::validate() const {
  if (n_qubits == 0) throw ConfigError("ansatz needs at least one qubit");
  std::set<std::size_t> seen;
  for (auto m : occupied_modes) {
    if (m >= n_qubits)
      throw RangeError(fmt::format("occupied mode {} outside {} qubits", m,
                                   n_qubits));
    if (!seen.insert(m).second)
      throw ConfigError(fmt::format("occupied mode {} listed twice", m));
  }
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_qubits;
  Circuit circ(n, spec.n_params());
  for (auto m : spec.occupied_modes) circ.add(PauliXGate{m});
  std::size_t p = 0;
  for (std::size_t layer = 0; layer < spec.layers; ++layer) {
    for (std::size_t q = 0; q < n; ++q) circ.add(RyGate{q, p++});
    for (std::size_t q = 0; q + 1 < n; ++q) circ.add(CnotGate{q, q + 1});
    if (spec.entanglement == Entanglement::Circular && n > 2)
      circ.add(CnotGate{n - 1, 0});
  }
  for (std::size_t q = 0; q < n; ++q) circ.add(RyGate{q, p++});
  return circ;
}

double number_penalty(const Statevector& state, std::size_t n_electrons) {
  const auto amps = state.amplitudes();
  const double ne = static_cast<double>(n_electrons);
  double acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double dn = static_cast<double>(std::popcount(b)) - ne;
    acc += std::norm(amps[b]) * dn * dn;
  }
  return acc;
}

namespace {

struct Attempt {
  double energy = std::numeric_limits<double>::infinity();
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> theta;
  std::vector<double> energy_history;
  std::vector<double> objective_history;
  std::size_t evaluations = 0;
  bool converged = false;
};

}  // namespace

VqeResult minimize_energy(const QubitOperator& hamiltonian,
                          const AnsatzSpec& spec, const VqeOptions& options) {
  if (hamiltonian.n_qubits() != spec.n_qubits)
    throw DimensionError(fmt::format("{}-qubit Hamiltonian for a {}-qubit ansatz",
                                     hamiltonian.n_qubits(), spec.n_qubits));
  if (!(options.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (options.penalty_lambda < 0.0)
    throw ConfigError("penalty weight must be non-negative");
  if (!hamiltonian.is_hermitian())
    throw ComputeError("VQE requires a Hermitian Hamiltonian");

  const Circuit circ = build_ansatz(spec);
  const std::size_t n_electrons = spec.occupied_modes.size();
  std::optional<ShardPlan> plan;
  if (options.shards > 1)
    plan = plan_shards(hamiltonian, options.shards, options.shard_strategy);

  Statevector work(spec.n_qubits);
  auto energy_of = [&](std::span<const double> theta) {
    work = Statevector(spec.n_qubits);
    apply_circuit_inplace(circ, theta, work);
    return plan ? expectation_sharded(hamiltonian, *plan, work, options.workers)
                : expectation(hamiltonian, work);
  };

  OptimizerOptions oopt;
  oopt.rho_begin = options.rho_begin;
  oopt.rho_end = std::min(options.tol, options.rho_begin);
  oopt.max_evaluations = options.max_iter;

  std::optional<Attempt> best;
  std::uint64_t best_seed = options.seed;
  std::size_t attempts = 0;
  for (std::size_t r = 0; r <= options.restarts; ++r) {
    const std::uint64_t seed = options.seed + r;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(-options.init_range,
                                                options.init_range);
    std::vector<double> theta0(circ.n_params());
    for (auto& t : theta0) t = init(rng);

    Attempt a;
    auto objective = [&](std::span<const double> theta) {
      const double e = energy_of(theta);
      double obj = e;
      if (options.penalty_lambda > 0.0)
        obj += options.penalty_lambda * number_penalty(work, n_electrons);
      if (!std::isfinite(obj))
        throw ComputeError(fmt::format("non-finite energy at evaluation {}",
                                       a.energy_history.size() + 1));
      a.energy_history.push_back(e);
      a.objective_history.push_back(obj);
      if (obj < a.objective) {
        a.objective = obj;
        a.energy = e;
        a.theta.assign(theta.begin(), theta.end());
      }
      return obj;
    };
    const OptimizerResult res =
        minimize(options.optimizer, objective, std::move(theta0), oopt);
    a.evaluations = res.evaluations;
    a.converged = res.status == OptimizerStatus::Converged &&
                  std::abs(res.last_level_decrease) < options.tol;
    ++attempts;
    const bool done = a.converged;
    if (!best || a.objective < best->objective) {
      best = std::move(a);
      best_seed = seed;
    }
    if (done) break;
  }

  VqeResult out;
  out.theta_opt = best->theta;
  out.final_state = apply_circuit(circ, out.theta_opt, Statevector(spec.n_qubits));
  out.energy = expectation(hamiltonian, out.final_state);
  out.objective = best->objective;
  out.iterations = best->evaluations;
  out.converged = best->converged;
  out.energy_history = std::move(best->energy_history);
  out.objective_history = std::move(best->objective_history);
  out.seed_used = best_seed;
  out.attempts = attempts;
  return out;
}

}  // namespace chiralq
