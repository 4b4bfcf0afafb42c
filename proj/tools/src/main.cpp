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

#include <exception>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "chiralq_tools/pipeline.hpp"

namespace {

using chiralq::tools::RunConfig;

// Config files group keys under [input], [vqe], ... headers; every key maps to
// the top-level option of the same name.
class SectionedConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> out;
    for (auto& item : CLI::ConfigTOML::from_config(input)) {
      if (item.name == "++" || item.name == "--") continue;
      item.parents.clear();
      out.push_back(std::move(item));
    }
    return out;
  }
};

void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("--fcidump", c.fcidump, "FCIDUMP file with the molecular integrals")
      ->check(CLI::ExistingFile);
  app.add_option("--properties", c.properties,
                 "dipole and angular-momentum integrals")
      ->check(CLI::ExistingFile);
  app.add_option("--occupations", c.occupations,
                 "natural-orbital occupations for active-space selection")
      ->delimiter(',');
  app.add_option("--epsilon", c.epsilon, "occupation threshold")->capture_default_str();

  app.add_option("--layers", c.layers, "ansatz layers")->capture_default_str();
  app.add_option("--entanglement", c.entanglement)
      ->check(CLI::IsMember({"linear", "circular"}))
      ->capture_default_str();
  app.add_option("--seed", c.seed)->capture_default_str();
  app.add_option("--tol", c.tol, "final trust radius and convergence tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "objective evaluations per attempt")
      ->capture_default_str();
  app.add_option("--penalty", c.penalty, "particle-number penalty weight")
      ->capture_default_str();
  app.add_option("--optimizer", c.optimizer)
      ->check(CLI::IsMember({"cobyla", "nelder-mead"}))
      ->capture_default_str();
  app.add_option("--restarts", c.restarts)->capture_default_str();
  app.add_option("--init-range", c.init_range)->capture_default_str();
  app.add_option("--rho-begin", c.rho_begin)->capture_default_str();

  app.add_option("--truncate", c.truncate, "keep this many excitation operators (0 = all)")
      ->capture_default_str();
  app.add_flag("--tda", c.tda, "drop the de-excitation blocks");
  app.add_option("--omega-min", c.omega_min)->capture_default_str();
  app.add_flag("--drop-backward", c.drop_backward,
               "ignore de-excitation amplitudes in transition moments");

  app.add_option("--sigma", c.sigma, "Gaussian broadening, eV")->capture_default_str();
  app.add_option("--grid-min", c.grid_min)->capture_default_str();
  app.add_option("--grid-max", c.grid_max)->capture_default_str();
  app.add_option("--grid-step", c.grid_step)->capture_default_str();
  app.add_flag("--cgs", c.cgs, "add rotatory strengths in 1e-40 esu^2 cm^2");

  app.add_option("--reference", c.reference, "ground state feeding qEOM")
      ->check(CLI::IsMember({"vqe", "oracle"}))
      ->capture_default_str();
  app.add_option("--shards", c.shards)->capture_default_str();
  app.add_option("--shard-strategy", c.shard_strategy)
      ->check(CLI::IsMember({"balanced", "round-robin"}))
      ->capture_default_str();
  app.add_option("--workers", c.workers, "0 reads CHIRALQ_WORKERS, then the core count")
      ->capture_default_str();
  app.add_option("--oracle-max-qubits", c.oracle_max_qubits)->capture_default_str();
  app.add_option("--oracle-states", c.oracle_states, "0 returns every sector state")
      ->capture_default_str();
  app.add_option("-o,--output", c.output, "output directory")->capture_default_str();
  app.add_flag("--compute-upstream", c.compute_upstream,
               "run missing earlier stages instead of failing");

  app.add_option("--bench-qubits", c.bench_qubits)->capture_default_str();
  app.add_option("--bench-terms", c.bench_terms)->capture_default_str();
  app.add_option("--bench-k", c.bench_k)->delimiter(',')->capture_default_str();
  app.add_option("--bench-repeats", c.bench_repeats)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiralq: VQE, qEOM and electronic circular dichroism"};
  app.config_formatter(std::make_shared<SectionedConfig>());
  app.set_config("--config", "", "TOML/INI run configuration");
  app.set_version_flag("--version", chiralq::tools::version_string());
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  add_options(app, cfg);

  auto* vqe = app.add_subcommand("vqe", "ground state by VQE");
  auto* oracle = app.add_subcommand("oracle", "exact diagonalization in the electron sector");
  auto* qeom = app.add_subcommand("qeom", "excitation energies from the qEOM secular problem");
  auto* ecd = app.add_subcommand("ecd", "transition moments and the ECD spectrum");
  auto* bench = app.add_subcommand("bench-shards", "sharded expectation timing");
  for (auto* sub : {vqe, oracle, qeom, ecd, bench}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (vqe->parsed()) chiralq::tools::cmd_vqe(cfg, std::cout);
    else if (oracle->parsed()) chiralq::tools::cmd_oracle(cfg, std::cout);
    else if (qeom->parsed()) chiralq::tools::cmd_qeom(cfg, std::cout);
    else if (ecd->parsed()) chiralq::tools::cmd_ecd(cfg, std::cout);
    else chiralq::tools::cmd_bench_shards(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "chiralq: " << e.what() << '\n';
    return chiralq::tools::exit_code_for(e);
  }
  return 0;
}
