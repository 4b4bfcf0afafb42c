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

namespace chiralq::units {

inline constexpr double kHartreeToEv = 27.211386245988;
inline constexpr double kEvNanometer = 1239.841984;

// CODATA 2018, cgs.
inline constexpr double kElementaryChargeEsu = 4.803204712570263e-10;
inline constexpr double kBohrCm = 5.29177210903e-9;
inline constexpr double kHbarErgS = 1.054571817e-27;
inline constexpr double kElectronMassG = 9.1093837015e-28;
inline constexpr double kLightCmS = 2.99792458e10;

/// Atomic unit of electric dipole, esu cm.
inline constexpr double kDipoleAuCgs = kElementaryChargeEsu * kBohrCm;
/// Atomic unit of magnetic dipole (e hbar / m_e, Gaussian), erg/G.
inline constexpr double kMagneticAuCgs =
    kElementaryChargeEsu * kHbarErgS / (kElectronMassG * kLightCmS);
/// Rotatory strength: atomic units to 1e-40 esu^2 cm^2.
inline constexpr double kRotatoryAuTo1e40Cgs =
    kDipoleAuCgs * kMagneticAuCgs * 1e40;

inline constexpr double hartree_to_ev(double e) { return e * kHartreeToEv; }
inline constexpr double ev_to_nm(double ev) { return kEvNanometer / ev; }

}  // namespace chiralq::units
