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

#include "chiralq/sharding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "chiralq/error.hpp"

namespace chiralq {

std::vector<double> ShardPlan::weights(const QubitOperator& op) const {
  const auto terms = op.term_list();
  std::vector<double> w(n_shards, 0.0);
  for (std::size_t s = 0; s < n_shards; ++s)
    for (std::size_t k : assignment[s]) w[s] += std::abs(terms[k].second);
  return w;
}

ShardPlan plan_shards(const QubitOperator& op, std::size_t k,
                      ShardStrategy strategy) {
  if (k == 0) throw ConfigError("shard count must be at least 1");
  const auto terms = op.term_list();
  ShardPlan plan;
  plan.n_shards = k;
  plan.n_terms = terms.size();
  plan.assignment.assign(k, {});

  if (strategy == ShardStrategy::RoundRobin) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      plan.assignment[t % k].push_back(t);
    }
    return plan;
  }

  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(terms[a].second) > std::abs(terms[b].second);
  });
  std::vector<double> load(k, 0.0);
  for (std::size_t t : order) {
    const auto lightest = static_cast<std::size_t>(
        std::min_element(load.begin(), load.end()) - load.begin());
    plan.assignment[lightest].push_back(t);
    load[lightest] += std::abs(terms[t].second);
  }
  for (auto& shard : plan.assignment) std::sort(shard.begin(), shard.end());
  return plan;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("CHIRALQ_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

double expectation_sharded(std::span<const std::pair<PauliWord, cplx>> terms,
                           const ShardPlan& plan, const Statevector& state,
                           std::size_t workers) {
  if (plan.n_terms != terms.size()) {
    throw DimensionError(fmt::format(
        "stale shard plan: built for {} terms, operator has {}", plan.n_terms,
        terms.size()));
  }
  for (const auto& [w, c] : terms) {
    if (std::abs(c.imag()) > 1e-12) {
      throw ComputeError("sharded expectation requires a Hermitian operator");
    }
  }

  std::vector<cplx> partial(plan.n_shards, cplx{});
  auto run_shard = [&](std::size_t s) {
    cplx sum{};
    for (std::size_t k : plan.assignment[s]) {
      sum += terms[k].second * expectation(terms[k].first, state);
    }
    partial[s] = sum;
  };

  if (workers == 0) workers = plan.n_shards;
  workers = std::min(workers, plan.n_shards);
  if (workers <= 1) {
    for (std::size_t s = 0; s < plan.n_shards; ++s) run_shard(s);
  } else {
    // Worker w owns shards w, w + workers, ...; each writes its own slot.
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < plan.n_shards; s += workers) run_shard(s);
      });
    }
  }

  cplx total{};
  for (const cplx& p : partial) total += p;
  if (std::abs(total.imag()) > 1e-10) {
    throw ComputeError(
        fmt::format("expectation has imaginary residue {:.3e}", total.imag()));
  }
  return total.real();
}

double expectation_sharded(const QubitOperator& op, const ShardPlan& plan,
                           const Statevector& state, std::size_t workers) {
  if (op.n_qubits() != state.n_qubits()) {
    throw DimensionError(fmt::format("{}-qubit operator on a {}-qubit state",
                                     op.n_qubits(), state.n_qubits()));
  }
  const auto terms = op.term_list();
  return expectation_sharded(std::span<const std::pair<PauliWord, cplx>>(terms),
                             plan, state, workers);
}

QubitOperator random_pauli_operator(std::size_t n_qubits, std::size_t n_terms,
                                    std::uint64_t seed) {
  if (n_qubits == 0 || n_qubits >= 32)
    throw ConfigError(fmt::format("cannot draw words on {} qubits", n_qubits));
  const double available = std::pow(4.0, static_cast<double>(n_qubits));
  if (static_cast<double>(n_terms) > available)
    throw ConfigError(fmt::format("{} distinct words requested, only {:.0f} exist",
                                  n_terms, available));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const std::uint64_t mask = (std::uint64_t{1} << n_qubits) - 1;
  QubitOperator op(n_qubits);
  while (op.size() < n_terms) {
    PauliWord w{rng() & mask, rng() & mask};
    if (op.terms().count(w)) continue;
    op.add_term(w, coeff(rng));
  }
  return op;
}

Statevector random_state(std::size_t n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) a = {g(rng), g(rng)};
  Statevector s(n_qubits, std::move(amps));
  s.normalize();
  return s;
}

}  // namespace chiralq
