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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chiralq {

/// Dense real 4-index tensor holding two-electron integrals in chemists'
/// notation, (pq|rs) = at(p, q, r, s).
class TwoElectronTensor {
 public:
  TwoElectronTensor() = default;
  explicit TwoElectronTensor(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

  std::size_t dim() const noexcept { return n_; }

  double operator()(std::size_t p, std::size_t q, std::size_t r,
                    std::size_t s) const noexcept {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  double& operator()(std::size_t p, std::size_t q, std::size_t r,
                     std::size_t s) noexcept {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }

  /// Writes `value` into all eight permutation-equivalent slots.
  void set_symmetric(std::size_t p, std::size_t q, std::size_t r,
                     std::size_t s, double value) noexcept;

  /// Largest deviation from 8-fold permutational symmetry.
  double symmetry_defect() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct SpatialIntegrals {
  std::size_t n_orbitals = 0;
  std::size_t n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd h;      // one-electron, Hartree
  TwoElectronTensor g;    // (pq|rs), Hartree

  /// Throws if h or g break their symmetries or the electron count is
  /// outside (0, 2 n_orbitals].
  void validate(double tol = 1e-12) const;
};

enum class Axis { X = 0, Y = 1, Z = 2 };

Axis parse_axis(const std::string& token);
char axis_letter(Axis axis) noexcept;

struct PropertyIntegrals {
  std::size_t n_orbitals = 0;
  /// Electric dipole integrals d^(x,y,z), symmetric, e*Bohr.
  std::array<Eigen::MatrixXd, 3> dipole;
  /// Real antisymmetric M^(x,y,z); the magnetic dipole operator is i*M.
  std::array<Eigen::MatrixXd, 3> magnetic;
  std::array<double, 3> gauge_origin{0.0, 0.0, 0.0};

  static PropertyIntegrals zeros(std::size_t n_orbitals);

  void validate(double tol = 1e-12) const;
};

struct ActiveSpaceSelection {
  std::vector<std::size_t> active_indices;
  std::vector<std::size_t> frozen_occupied;
  std::vector<std::size_t> discarded_virtual;
  std::size_t n_active_electrons = 0;
};

struct ActiveSpaceProblem {
  std::size_t n_active_orbitals = 0;
  std::size_t n_active_electrons = 0;
  double effective_core_energy = 0.0;
  Eigen::MatrixXd h_eff;
  TwoElectronTensor g_act;
  std::optional<PropertyIntegrals> properties;

  std::size_t n_qubits() const noexcept { return 2 * n_active_orbitals; }
};

// FCIDUMP ------------------------------------------------------------------

/// Reads the FCIDUMP namelist header and integral records.
/// Errors: ParseError (with line number), RangeError, ConsistencyError.
SpatialIntegrals parse_fcidump(std::istream& in);
SpatialIntegrals read_fcidump(const std::string& path);

/// Canonical FCIDUMP: unique (pq|rs) with p>=q, r>=s, pq>=rs, then h_pq
/// with p>=q, then the core energy. Values printed with 17 significant digits.
void write_fcidump(std::ostream& out, const SpatialIntegrals& ints);

// Property integrals --------------------------------------------------------

/// Line format:
///   NORB <n>
///   ORIGIN <x> <y> <z>
///   DIPOLE <X|Y|Z> <p> <q> <value>
///   ANGMOM <X|Y|Z> <p> <q> <value>
/// Indices are 1-based. '#' starts a comment.
PropertyIntegrals parse_property_integrals(std::istream& in);
PropertyIntegrals read_property_integrals(const std::string& path);
void write_property_integrals(std::ostream& out, const PropertyIntegrals& props);

// Active space --------------------------------------------------------------

/// Keeps orbitals with epsilon < n_i < 2 - epsilon. Index lists are ordered by
/// descending occupation (stable in the original index for ties).
ActiveSpaceSelection select_active_space(std::span<const double> occupations,
                                         double epsilon,
                                         std::size_t n_electrons);

/// Selection that keeps every orbital active.
ActiveSpaceSelection full_active_space(const SpatialIntegrals& ints);

/// Folds doubly occupied frozen orbitals into the core energy and the
/// one-electron matrix; restricts g and the property matrices.
ActiveSpaceProblem freeze_core(const SpatialIntegrals& ints,
                               const ActiveSpaceSelection& sel,
                               const std::optional<PropertyIntegrals>& props =
                                   std::nullopt);

}  // namespace chiralq
