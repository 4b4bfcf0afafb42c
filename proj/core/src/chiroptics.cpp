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

#include "chiralq/chiroptics.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "chiralq/error.hpp"
#include "chiralq/hamiltonian.hpp"
#include "chiralq/units.hpp"

namespace chiralq {

PropertyOperators build_property_operators(const PropertyIntegrals& props) {
  props.validate();
  PropertyOperators ops;
  for (int a = 0; a < 3; ++a) {
    ops.dipole[a] = build_one_body_operator(props.dipole[a], OneBodyKind::Symmetric);
    ops.magnetic[a] = build_one_body_operator(props.magnetic[a],
                                              OneBodyKind::AntisymmetricImaginary);
  }
  ops.gauge_origin = props.gauge_origin;
  return ops;
}

std::vector<TransitionRecord> transition_moments(
    const PropertyOperators& ops, const ExcitationManifold& manifold,
    const QeomSolution& sol, const Statevector& psi0,
    const MomentOptions& options, std::vector<std::size_t>* skipped) {
  const std::size_t n = manifold.size();
  for (const auto& s : sol.states) {
    if (static_cast<std::size_t>(s.c.size()) != n ||
        static_cast<std::size_t>(s.d.size()) != n)
      throw DimensionError(fmt::format(
          "amplitude length {} does not match manifold size {}", s.c.size(), n));
  }
  for (int a = 0; a < 3; ++a) {
    if (ops.dipole[a].n_qubits() != psi0.n_qubits() ||
        ops.magnetic[a].n_qubits() != psi0.n_qubits())
      throw DimensionError("property operators and state disagree in qubit count");
  }
  if (manifold.n_qubits() != psi0.n_qubits())
    throw DimensionError("manifold and state disagree in qubit count");

  // fwd(k, nu) = <[P_k, G_nu]>, bwd(k, nu) = <[P_k, G_nu+]>; k = 0..2 electric,
  // 3..5 magnetic.
  std::array<Statevector, 6> ppsi;
  for (int a = 0; a < 3; ++a) {
    ppsi[a] = apply_operator(ops.dipole[a], psi0);
    ppsi[3 + a] = apply_operator(ops.magnetic[a], psi0);
  }
  std::vector<std::array<cplx, 6>> fwd(n), bwd(n);
  for (std::size_t nu = 0; nu < n; ++nu) {
    const QubitOperator& g = manifold.operators[nu].qubit_form;
    const Statevector e = apply_operator(g, psi0);
    const Statevector d = apply_operator(g.adjoint(), psi0);
    for (int k = 0; k < 6; ++k) {
      fwd[nu][k] = inner(ppsi[k], e) - inner(d, ppsi[k]);
      bwd[nu][k] = inner(ppsi[k], d) - inner(e, ppsi[k]);
    }
  }

  std::vector<TransitionRecord> out;
  for (std::size_t s = 0; s < sol.states.size(); ++s) {
    const QeomState& st = sol.states[s];
    if (!(st.norm > options.norm_cutoff)) {
      if (skipped) skipped->push_back(s);
      continue;
    }
    std::array<cplx, 6> acc{};
    for (std::size_t nu = 0; nu < n; ++nu) {
      const auto i = static_cast<Eigen::Index>(nu);
      for (int k = 0; k < 6; ++k) {
        acc[k] += st.c(i) * fwd[nu][k];
        if (options.include_backward) acc[k] -= st.d(i) * bwd[nu][k];
      }
    }
    const double scale = 1.0 / std::sqrt(st.norm);
    TransitionRecord r;
    r.index = s;
    r.omega = st.omega;
    for (int a = 0; a < 3; ++a) {
      r.mu[a] = (acc[a] * scale).real();
      r.m_tilde[a] = (acc[3 + a] * scale).imag();
    }
    r.R = rotatory_strength(r.mu, r.m_tilde);
    out.push_back(r);
  }
  return out;
}

double rotatory_strength(const Vec3& mu, const Vec3& m_tilde) noexcept {
  return -(mu[0] * m_tilde[0] + mu[1] * m_tilde[1] + mu[2] * m_tilde[2]);
}

PropertyIntegrals mirror_transform(const PropertyIntegrals& props, Axis axis) {
  PropertyIntegrals out = props;
  const int k = static_cast<int>(axis);
  for (int a = 0; a < 3; ++a) {
    if (a == k)
      out.dipole[a] = -props.dipole[a];
    else
      out.magnetic[a] = -props.magnetic[a];
  }
  return out;
}

std::vector<double> EnergyGrid::points() const {
  if (!(step_ev > 0.0) || !(max_ev >= min_ev))
    throw ConfigError(fmt::format("invalid energy grid [{}, {}] step {}", min_ev,
                                  max_ev, step_ev));
  const auto count =
      static_cast<std::size_t>(std::floor((max_ev - min_ev) / step_ev + 1e-9)) + 1;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i)
    pts[i] = min_ev + static_cast<double>(i) * step_ev;
  return pts;
}

EcdSpectrum build_spectrum(const std::vector<TransitionRecord>& records,
                           const EnergyGrid& grid, double sigma_ev) {
  if (!(sigma_ev > 0.0))
    throw ConfigError(fmt::format("broadening width must be positive, got {}", sigma_ev));
  EcdSpectrum sp;
  sp.grid_ev = grid.points();
  sp.sigma_ev = sigma_ev;
  sp.records = records;
  sp.intensity.assign(sp.grid_ev.size(), 0.0);
  const double inv = 1.0 / (2.0 * sigma_ev * sigma_ev);
  for (std::size_t i = 0; i < sp.grid_ev.size(); ++i) {
    double acc = 0.0;
    for (const auto& r : records) {
      const double w = units::hartree_to_ev(r.omega);
      const double x = sp.grid_ev[i] - w;
      acc += w * r.R * std::exp(-x * x * inv);
    }
    sp.intensity[i] = acc;
  }
  return sp;
}

void write_transitions_csv(std::ostream& out,
                           const std::vector<TransitionRecord>& records,
                           bool cgs_column) {
  out << "index,omega_hartree,omega_ev,lambda_nm,mu_x,mu_y,mu_z,"
         "mtilde_x,mtilde_y,mtilde_z,R_au";
  if (cgs_column) out << ",R_1e40_cgs";
  out << '\n';
  for (const auto& r : records) {
    const double ev = units::hartree_to_ev(r.omega);
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                       "{:.17g},{:.17g},{:.17g},{:.17g}",
                       r.index, r.omega, ev, units::ev_to_nm(ev), r.mu[0], r.mu[1],
                       r.mu[2], r.m_tilde[0], r.m_tilde[1], r.m_tilde[2], r.R + 0.0);
    if (cgs_column) out << fmt::format(",{:.17g}", r.R * units::kRotatoryAuTo1e40Cgs + 0.0);
    out << '\n';
  }
}

std::vector<TransitionRecord> read_transitions_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line.rfind("index,omega_hartree,", 0) != 0)
    throw ParseError("missing transitions header", lineno);
  std::vector<TransitionRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError(fmt::format("bad number '{}'", cell), lineno);
      }
    }
    if (v.size() < 11) throw ParseError("too few columns", lineno);
    TransitionRecord r;
    r.index = static_cast<std::size_t>(v[0]);
    r.omega = v[1];
    r.mu = {v[4], v[5], v[6]};
    r.m_tilde = {v[7], v[8], v[9]};
    r.R = v[10];
    out.push_back(r);
  }
  return out;
}

void write_spectrum_csv(std::ostream& out, const EcdSpectrum& spectrum) {
  out << "energy_ev,lambda_nm,intensity\n";
  for (std::size_t i = 0; i < spectrum.grid_ev.size(); ++i) {
    const double e = spectrum.grid_ev[i];
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n", e, units::ev_to_nm(e),
                       spectrum.intensity[i]);
  }
}

}  // namespace chiralq
