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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "chiralq/model_io.hpp"
#include "chiralq/pauli.hpp"
#include "chiralq/qeom.hpp"
#include "chiralq/statevector.hpp"

namespace chiralq {

using Vec3 = std::array<double, 3>;

struct PropertyOperators {
  std::array<QubitOperator, 3> dipole;
  /// i * M, Hermitian.
  std::array<QubitOperator, 3> magnetic;
  Vec3 gauge_origin{0.0, 0.0, 0.0};
};

PropertyOperators build_property_operators(const PropertyIntegrals& props);

struct TransitionRecord {
  std::size_t index = 0;
  double omega = 0.0;  // Hartree
  Vec3 mu{};           // e*Bohr
  Vec3 m_tilde{};      // physical moment is i*m_tilde
  double R = 0.0;      // atomic units
};

struct MomentOptions {
  bool include_backward = true;
  double norm_cutoff = 1e-8;
};

/// States whose norm falls below the cutoff are skipped and their indices
/// appended to `skipped` when given.
std::vector<TransitionRecord> transition_moments(
    const PropertyOperators& ops, const ExcitationManifold& manifold,
    const QeomSolution& sol, const Statevector& psi0,
    const MomentOptions& options = {},
    std::vector<std::size_t>* skipped = nullptr);

/// Im[mu . conj(i m_tilde)] = -(mu . m_tilde)
double rotatory_strength(const Vec3& mu, const Vec3& m_tilde) noexcept;

/// Reflection through the plane normal to `axis`.
PropertyIntegrals mirror_transform(const PropertyIntegrals& props, Axis axis);

struct EnergyGrid {
  double min_ev = 1.0;
  double max_ev = 10.0;
  double step_ev = 0.01;

  std::vector<double> points() const;
};

struct EcdSpectrum {
  std::vector<double> grid_ev;
  std::vector<double> intensity;
  double sigma_ev = 0.3;
  std::vector<TransitionRecord> records;
};

/// intensity(E) = sum_k w_k R_k exp(-(E - w_k)^2 / (2 sigma^2)), w_k in eV.
EcdSpectrum build_spectrum(const std::vector<TransitionRecord>& records,
                           const EnergyGrid& grid, double sigma_ev = 0.3);

void write_transitions_csv(std::ostream& out,
                           const std::vector<TransitionRecord>& records,
                           bool cgs_column = false);
std::vector<TransitionRecord> read_transitions_csv(std::istream& in);
void write_spectrum_csv(std::ostream& out, const EcdSpectrum& spectrum);

}  // namespace chiralq
