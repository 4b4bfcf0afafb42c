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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace chiralq::tools {

struct RunConfig {
  // input
  std::string fcidump;
  std::string properties;
  std::vector<double> occupations;
  double epsilon = 0.02;

  // ansatz and optimizer
  std::size_t layers = 3;
  std::string entanglement = "circular";
  std::uint64_t seed = 7;
  double tol = 1e-4;
  std::size_t max_iter = 20000;
  double penalty = 1.0;
  std::string optimizer = "cobyla";
  std::size_t restarts = 3;
  double init_range = 0.01;
  double rho_begin = 0.5;

  // qeom
  std::size_t truncate = 0;  // 0 keeps the full manifold
  bool tda = false;
  double omega_min = 1e-6;
  bool drop_backward = false;

  // spectrum
  double sigma = 0.3;
  double grid_min = 1.0;
  double grid_max = 20.0;
  double grid_step = 0.01;
  bool cgs = false;

  // run
  std::string reference = "vqe";
  std::size_t shards = 1;
  std::string shard_strategy = "balanced";
  std::size_t workers = 0;  // 0 reads CHIRALQ_WORKERS, then the core count
  std::size_t oracle_max_qubits = 14;
  std::size_t oracle_states = 0;
  std::string output = "chiralq_out";
  bool compute_upstream = false;

  // bench-shards
  std::size_t bench_qubits = 16;
  std::size_t bench_terms = 600;
  std::vector<std::size_t> bench_k{1, 2, 4};
  std::size_t bench_repeats = 5;

  /// Range and consistency checks that need no file access.
  void validate() const;
  std::size_t resolved_workers() const;
};

void cmd_vqe(const RunConfig& cfg, std::ostream& log);
void cmd_oracle(const RunConfig& cfg, std::ostream& log);
void cmd_qeom(const RunConfig& cfg, std::ostream& log);
void cmd_ecd(const RunConfig& cfg, std::ostream& log);
void cmd_bench_shards(const RunConfig& cfg, std::ostream& log);

/// 0 success, 2 input data, 3 configuration, 4 computation, 5 filesystem,
/// 1 anything else.
int exit_code_for(const std::exception& e) noexcept;

std::string version_string();
std::string sha256_file(const std::filesystem::path& path);

}  // namespace chiralq::tools
