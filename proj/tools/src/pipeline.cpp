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

#include "chiralq_tools/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "chiralq/chiroptics.hpp"
#include "chiralq/error.hpp"
#include "chiralq/hamiltonian.hpp"
#include "chiralq/model_io.hpp"
#include "chiralq/oracle.hpp"
#include "chiralq/qeom.hpp"
#include "chiralq/sharding.hpp"
#include "chiralq/vqe.hpp"

#ifndef CHIRALQ_VERSION_STRING
#define CHIRALQ_VERSION_STRING "unknown"
#endif

namespace chiralq::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kMetadataFile = "metadata.json";

ShardStrategy parse_strategy(const std::string& s) {
  if (s == "balanced") return ShardStrategy::WeightBalanced;
  if (s == "round-robin") return ShardStrategy::RoundRobin;
  throw ConfigError(fmt::format("unknown shard strategy '{}'", s));
}

json config_json(const RunConfig& c) {
  return json{
      {"fcidump", c.fcidump},
      {"properties", c.properties},
      {"occupations", c.occupations},
      {"epsilon", c.epsilon},
      {"layers", c.layers},
      {"entanglement", c.entanglement},
      {"seed", c.seed},
      {"tol", c.tol},
      {"max_iter", c.max_iter},
      {"penalty", c.penalty},
      {"optimizer", c.optimizer},
      {"restarts", c.restarts},
      {"init_range", c.init_range},
      {"rho_begin", c.rho_begin},
      {"truncate", c.truncate},
      {"tda", c.tda},
      {"omega_min", c.omega_min},
      {"drop_backward", c.drop_backward},
      {"sigma", c.sigma},
      {"grid_min", c.grid_min},
      {"grid_max", c.grid_max},
      {"grid_step", c.grid_step},
      {"cgs", c.cgs},
      {"reference", c.reference},
      {"shards", c.shards},
      {"shard_strategy", c.shard_strategy},
      {"workers", c.resolved_workers()},
      {"oracle_max_qubits", c.oracle_max_qubits},
      {"oracle_states", c.oracle_states},
      {"output", c.output},
      {"bench_qubits", c.bench_qubits},
      {"bench_terms", c.bench_terms},
      {"bench_k", c.bench_k},
      {"bench_repeats", c.bench_repeats},
  };
}

struct Loaded {
  SpatialIntegrals ints;
  ActiveSpaceSelection selection;
  ActiveSpaceProblem problem;
  QubitOperator hamiltonian;
  std::vector<std::size_t> occupied;
};

Loaded load(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.fcidump.empty()) throw ConfigError("--fcidump is required");
  Loaded L;
  L.ints = read_fcidump(cfg.fcidump);
  std::optional<PropertyIntegrals> props;
  if (!cfg.properties.empty()) props = read_property_integrals(cfg.properties);
  L.selection = cfg.occupations.empty()
                    ? full_active_space(L.ints)
                    : select_active_space(cfg.occupations, cfg.epsilon,
                                          L.ints.n_electrons);
  L.problem = freeze_core(L.ints, L.selection, props);
  if (cfg.reference == "oracle" && L.problem.n_qubits() > cfg.oracle_max_qubits)
    throw ConfigError(fmt::format(
        "reference=oracle needs {} qubits but the oracle limit is {}; use "
        "--reference vqe or raise --oracle-max-qubits (at most {})",
        L.problem.n_qubits(), cfg.oracle_max_qubits, kOracleHardMaxQubits));
  L.hamiltonian = build_hamiltonian(L.problem);
  L.occupied = reference_occupied_modes(L.problem.n_active_orbitals,
                                        L.problem.n_active_electrons);
  return L;
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError(fmt::format("cannot create output directory {}: {}",
                              dir.string(), ec.message()));
  return dir;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  fn(out);
  if (!out) throw IoError("write failed for " + path.string());
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

void write_state_csv(std::ostream& out, const Statevector& s) {
  out << "index,re,im\n";
  for (std::size_t i = 0; i < s.dim(); ++i)
    out << fmt::format("{},{:.17g},{:.17g}\n", i, s[i].real(), s[i].imag());
}

Statevector read_state_csv(std::istream& in, std::size_t n_qubits) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != "index,re,im")
    throw ParseError("missing state header", lineno);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    try {
      const std::size_t idx = std::stoul(a);
      if (idx >= amps.size())
        throw RangeError(fmt::format("line {}: amplitude index {} outside {} qubits",
                                     lineno, idx, n_qubits));
      amps[idx] = {std::stod(b), std::stod(c)};
    } catch (const std::logic_error&) {
      throw ParseError("malformed amplitude row", lineno);
    }
    ++rows;
  }
  if (rows != amps.size())
    throw DimensionError(fmt::format(
        "reference state has {} amplitudes, the problem needs {} ({} qubits)", rows,
        amps.size(), n_qubits));
  return Statevector(n_qubits, std::move(amps));
}

json input_checksums(const RunConfig& cfg) {
  json j = json::object();
  if (!cfg.fcidump.empty())
    j["fcidump"] = {{"path", cfg.fcidump}, {"sha256", sha256_file(cfg.fcidump)}};
  if (!cfg.properties.empty())
    j["properties"] = {{"path", cfg.properties},
                       {"sha256", sha256_file(cfg.properties)}};
  return j;
}

json read_metadata(const fs::path& dir) {
  const fs::path p = dir / kMetadataFile;
  if (!fs::exists(p)) return json::object();
  std::ifstream in(p);
  json j = json::parse(in, nullptr, false);
  return j.is_object() ? j : json::object();
}

void record_stage(const fs::path& dir, const std::string& stage,
                  const RunConfig& cfg, json extra) {
  json meta = read_metadata(dir);
  meta["version"] = version_string();
  json entry = {{"config", config_json(cfg)},
                {"version", version_string()},
                {"inputs", input_checksums(cfg)}};
  entry.update(extra);
  meta["stages"][stage] = entry;
  write_file(dir / kMetadataFile, [&](std::ostream& o) { o << meta.dump(2) << '\n'; });
}

// Artifacts left by an earlier stage must come from the same integrals.
void check_upstream_inputs(const fs::path& dir, const std::string& stage,
                           const RunConfig& cfg) {
  const json meta = read_metadata(dir);
  if (!meta.contains("stages") || !meta["stages"].contains(stage)) return;
  const json& inputs = meta["stages"][stage]["inputs"];
  if (!inputs.contains("fcidump")) return;
  if (inputs["fcidump"].value("sha256", "") != sha256_file(cfg.fcidump))
    throw ConfigError(fmt::format(
        "{} artifacts in {} were produced from a different FCIDUMP; rerun "
        "`chiralq {}` or pass --compute-upstream",
        stage, dir.string(), stage));
}

fs::path reference_path(const fs::path& dir, const RunConfig& cfg) {
  return dir / fmt::format("reference_state_{}.csv", cfg.reference);
}

void require_artifacts(const std::vector<fs::path>& paths,
                       const std::string& producer, const RunConfig& cfg) {
  for (const auto& p : paths) {
    if (!fs::exists(p))
      throw ConfigError(fmt::format(
          "missing {}; run `chiralq {}` with the same --output ({}) first, or "
          "pass --compute-upstream",
          p.string(), producer, cfg.output));
  }
}

void ensure_reference(const RunConfig& cfg, const fs::path& dir, std::ostream& log) {
  const fs::path ref = reference_path(dir, cfg);
  if (!fs::exists(ref) && cfg.compute_upstream) {
    if (cfg.reference == "vqe")
      cmd_vqe(cfg, log);
    else
      cmd_oracle(cfg, log);
  }
  require_artifacts({ref}, cfg.reference, cfg);
  check_upstream_inputs(dir, cfg.reference, cfg);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(fmt::format("{} must be positive, got {}", name, v));
  };
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError(fmt::format("epsilon must lie in (0, 1), got {}", epsilon));
  parse_entanglement(entanglement);
  parse_optimizer_kind(optimizer);
  parse_strategy(shard_strategy);
  positive(tol, "tol");
  positive(init_range, "init-range");
  positive(rho_begin, "rho-begin");
  positive(omega_min, "omega-min");
  positive(sigma, "sigma");
  positive(grid_step, "grid-step");
  if (penalty < 0.0) throw ConfigError("penalty must be non-negative");
  if (max_iter == 0) throw ConfigError("max-iter must be positive");
  if (!(grid_max > grid_min) || !(grid_min > 0.0))
    throw ConfigError(fmt::format("energy grid [{}, {}] must be positive and ascending",
                                  grid_min, grid_max));
  if (reference != "vqe" && reference != "oracle")
    throw ConfigError(fmt::format("reference must be vqe or oracle, got '{}'", reference));
  if (shards == 0) throw ConfigError("shards must be at least 1");
  if (oracle_max_qubits > kOracleHardMaxQubits)
    throw ConfigError(fmt::format("oracle-max-qubits cannot exceed {}",
                                  kOracleHardMaxQubits));
  if (bench_k.empty() || std::find(bench_k.begin(), bench_k.end(), 0u) != bench_k.end())
    throw ConfigError("bench-k needs positive shard counts");
  if (bench_repeats == 0) throw ConfigError("bench-repeats must be positive");
}

std::size_t RunConfig::resolved_workers() const {
  return workers ? workers : default_worker_count();
}

void cmd_vqe(const RunConfig& cfg, std::ostream& log) {
  const Loaded L = load(cfg);
  const fs::path dir = out_dir(cfg);

  AnsatzSpec spec;
  spec.n_qubits = L.problem.n_qubits();
  spec.layers = cfg.layers;
  spec.entanglement = parse_entanglement(cfg.entanglement);
  spec.occupied_modes = L.occupied;

  VqeOptions opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.max_iter = cfg.max_iter;
  opt.penalty_lambda = cfg.penalty;
  opt.init_range = cfg.init_range;
  opt.restarts = cfg.restarts;
  opt.optimizer = parse_optimizer_kind(cfg.optimizer);
  opt.rho_begin = cfg.rho_begin;
  opt.shards = cfg.shards;
  opt.shard_strategy = parse_strategy(cfg.shard_strategy);
  opt.workers = cfg.resolved_workers();

  const VqeResult r = minimize_energy(L.hamiltonian, spec, opt);

  write_file(dir / "vqe_result.txt", [&](std::ostream& o) {
    o << fmt::format("energy = {:.17g}\n", r.energy);
    o << fmt::format("objective = {:.17g}\n", r.objective);
    o << fmt::format("iterations = {}\n", r.iterations);
    o << fmt::format("converged = {}\n", r.converged);
    o << fmt::format("seed = {}\n", r.seed_used);
    o << fmt::format("attempts = {}\n", r.attempts);
    o << fmt::format("n_params = {}\n", r.theta_opt.size());
    o << fmt::format("theta = {:.17g}\n", fmt::join(r.theta_opt, ","));
  });
  write_file(dir / "energy_history.csv", [&](std::ostream& o) {
    o << "evaluation,energy_hartree,objective_hartree\n";
    for (std::size_t i = 0; i < r.energy_history.size(); ++i)
      o << fmt::format("{},{:.17g},{:.17g}\n", i + 1, r.energy_history[i],
                       r.objective_history[i]);
  });
  write_file(dir / "reference_state_vqe.csv",
             [&](std::ostream& o) { write_state_csv(o, r.final_state); });
  record_stage(dir, "vqe", cfg,
               {{"energy", r.energy},
                {"converged", r.converged},
                {"iterations", r.iterations},
                {"n_qubits", spec.n_qubits},
                {"basis_note", "basis set is a property of the input integrals"}});
  log << fmt::format("vqe: E = {:.10f} Ha after {} evaluations ({}), {} qubits -> {}\n",
                     r.energy, r.iterations,
                     r.converged ? "converged" : "not converged", spec.n_qubits,
                     dir.string());
}

void cmd_oracle(const RunConfig& cfg, std::ostream& log) {
  const Loaded L = load(cfg);
  const fs::path dir = out_dir(cfg);
  const Sector sector{L.problem.n_active_electrons, L.ints.ms2};
  const ExactSolution sol = exact_eigensystem(L.hamiltonian, cfg.oracle_states,
                                              sector, cfg.oracle_max_qubits);
  write_file(dir / "oracle_energies.csv",
             [&](std::ostream& o) { write_energies_csv(o, sol); });
  write_file(dir / "reference_state_oracle.csv",
             [&](std::ostream& o) { write_state_csv(o, sol.states.front()); });
  record_stage(dir, "oracle", cfg,
               {{"ground_energy", sol.energies.front()},
                {"n_states", sol.energies.size()},
                {"sector", {{"n_electrons", sector.n_electrons}, {"ms2", sector.ms2}}}});
  write_energies_csv(log, sol);
}

void cmd_qeom(const RunConfig& cfg, std::ostream& log) {
  const Loaded L = load(cfg);
  const fs::path dir = out_dir(cfg);
  ensure_reference(cfg, dir, log);

  const std::size_t n_occ = L.problem.n_active_electrons / 2;
  if (n_occ == 0 || n_occ >= L.problem.n_active_orbitals)
    throw ConfigError(fmt::format(
        "active space ({}e, {}o) has no occupied-to-virtual excitations",
        L.problem.n_active_electrons, L.problem.n_active_orbitals));
  std::ifstream sin = open_input(reference_path(dir, cfg));
  const Statevector psi0 = read_state_csv(sin, L.problem.n_qubits());

  ExcitationManifold manifold =
      generate_manifold(n_occ, L.problem.n_active_orbitals - n_occ);
  const std::size_t full_size = manifold.size();
  if (cfg.truncate > 0)
    manifold = truncate_manifold(manifold, L.hamiltonian, psi0, cfg.truncate);

  const QeomMatrices mats =
      assemble_matrices(L.hamiltonian, manifold, psi0, cfg.resolved_workers());
  SecularOptions sopt;
  sopt.omega_min = cfg.omega_min;
  sopt.tda = cfg.tda;
  const QeomSolution sol = solve_secular(mats, sopt);

  write_file(dir / "manifold.csv",
             [&](std::ostream& o) { write_manifold_csv(o, manifold); });
  write_file(dir / "qeom_solution.csv",
             [&](std::ostream& o) { write_solution_csv(o, sol); });
  write_file(dir / "qeom_amplitudes.csv",
             [&](std::ostream& o) { write_amplitudes_csv(o, sol); });
  record_stage(dir, "qeom", cfg,
               {{"reference", cfg.reference},
                {"manifold_size", manifold.size()},
                {"full_manifold_size", full_size},
                {"discarded_metric_dimension", sol.discarded_dimension},
                {"n_states", sol.states.size()},
                {"tda", cfg.tda}});
  log << fmt::format("qeom: {} states from {} operators (metric null space {}) -> {}\n",
                     sol.states.size(), manifold.size(), sol.discarded_dimension,
                     dir.string());
}

void cmd_ecd(const RunConfig& cfg, std::ostream& log) {
  if (cfg.properties.empty())
    throw ConfigError("ecd needs --properties with dipole and magnetic integrals");
  const Loaded L = load(cfg);
  const fs::path dir = out_dir(cfg);

  const std::vector<fs::path> upstream{dir / "manifold.csv",
                                       dir / "qeom_amplitudes.csv",
                                       reference_path(dir, cfg)};
  const bool missing = std::any_of(upstream.begin(), upstream.end(),
                                   [](const fs::path& p) { return !fs::exists(p); });
  const json meta = read_metadata(dir);
  const bool other_reference =
      !missing && meta.contains("stages") && meta["stages"].contains("qeom") &&
      meta["stages"]["qeom"].value("reference", cfg.reference) != cfg.reference;
  if ((missing || other_reference) && cfg.compute_upstream) {
    cmd_qeom(cfg, log);
  } else if (other_reference) {
    throw ConfigError(fmt::format(
        "qeom artifacts in {} were built on the {} reference; rerun `chiralq qeom "
        "--reference {}` or pass --compute-upstream",
        dir.string(), meta["stages"]["qeom"].value("reference", ""), cfg.reference));
  }
  require_artifacts(upstream, "qeom", cfg);
  check_upstream_inputs(dir, "qeom", cfg);

  std::ifstream min = open_input(upstream[0]);
  const ExcitationManifold manifold = read_manifold_csv(min);
  if (manifold.n_qubits() != L.problem.n_qubits())
    throw DimensionError(fmt::format(
        "cached manifold is for {} qubits but the problem has {}; rerun qeom",
        manifold.n_qubits(), L.problem.n_qubits()));
  std::ifstream ain = open_input(upstream[1]);
  const QeomSolution sol = read_amplitudes_csv(ain);
  std::ifstream sin = open_input(upstream[2]);
  const Statevector psi0 = read_state_csv(sin, L.problem.n_qubits());

  const PropertyOperators ops = build_property_operators(*L.problem.properties);
  MomentOptions mopt;
  mopt.include_backward = !cfg.drop_backward;
  std::vector<std::size_t> skipped;
  const auto records = transition_moments(ops, manifold, sol, psi0, mopt, &skipped);
  for (auto s : skipped)
    log << fmt::format("warning: state {} has a vanishing norm and was skipped\n", s);

  EnergyGrid grid{cfg.grid_min, cfg.grid_max, cfg.grid_step};
  const EcdSpectrum spectrum = build_spectrum(records, grid, cfg.sigma);

  write_file(dir / "transitions.csv",
             [&](std::ostream& o) { write_transitions_csv(o, records, cfg.cgs); });
  write_file(dir / "spectrum.csv",
             [&](std::ostream& o) { write_spectrum_csv(o, spectrum); });
  const auto& origin = ops.gauge_origin;
  record_stage(dir, "ecd", cfg,
               {{"sigma_ev", cfg.sigma},
                {"grid_ev", {{"min", grid.min_ev}, {"max", grid.max_ev}, {"step", grid.step_ev}}},
                {"gauge_origin_bohr", {origin[0], origin[1], origin[2]}},
                {"manifold_size", manifold.size()},
                {"reference", cfg.reference},
                {"skipped_states", skipped},
                {"rotatory_strength_units", cfg.cgs ? "au and 1e-40 esu^2 cm^2" : "au"}});
  double rmax = 0.0;
  for (const auto& r : records) rmax = std::max(rmax, std::abs(r.R));
  log << fmt::format("ecd: {} transitions, max |R| = {:.3e} au -> {}\n",
                     records.size(), rmax, dir.string());
}

void cmd_bench_shards(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const fs::path dir = out_dir(cfg);
  const QubitOperator op = random_pauli_operator(cfg.bench_qubits, cfg.bench_terms, cfg.seed);
  const Statevector state = random_state(cfg.bench_qubits, cfg.seed + 1);
  const double reference = expectation(op, state);
  const ShardStrategy strategy = parse_strategy(cfg.shard_strategy);

  struct Row {
    std::size_t k;
    double ms;
  };
  std::vector<Row> rows;
  for (std::size_t k : cfg.bench_k) {
    const ShardPlan plan = plan_shards(op, k, strategy);
    std::vector<double> times;
    double value = expectation_sharded(op, plan, state, k);
    for (std::size_t r = 0; r < cfg.bench_repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      value = expectation_sharded(op, plan, state, k);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    if (std::abs(value - reference) > 1e-12)
      throw ComputeError(fmt::format(
          "sharded expectation with k={} differs from unsharded by {:.3e}", k,
          std::abs(value - reference)));
    rows.push_back({k, median(times)});
  }
  const double base = rows.front().ms;
  auto emit = [&](std::ostream& o) {
    o << "k,wall_ms,speedup\n";
    for (const auto& r : rows)
      o << fmt::format("{},{:.6f},{:.6f}\n", r.k, r.ms, base / r.ms);
  };
  write_file(dir / "bench_shards.csv", emit);
  record_stage(dir, "bench-shards", cfg,
               {{"expectation", reference},
                {"hardware_threads", std::thread::hardware_concurrency()}});
  emit(log);
}

int exit_code_for(const std::exception& e) noexcept {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return 1;
  switch (err->category()) {
    case ErrorCategory::Parse:
    case ErrorCategory::Range:
    case ErrorCategory::Consistency:
      return 2;
    case ErrorCategory::Config:
    case ErrorCategory::Selection:
    case ErrorCategory::Dimension:
      return 3;
    case ErrorCategory::Compute:
      return 4;
    case ErrorCategory::Io:
      return 5;
  }
  return 1;
}

std::string version_string() { return CHIRALQ_VERSION_STRING; }

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw ComputeError("cannot allocate digest context");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

}  // namespace chiralq::tools
