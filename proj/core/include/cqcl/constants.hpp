// Copyright 2026 The cqcl Authors
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

#include <numbers>

namespace cqcl::constants
{
// CODATA 2018 exact / recommended values, SI units.
inline constexpr double c_light = 299792458.0;               // m/s
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C, also J/eV
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double epsilon0 = 8.8541878128e-12;         // F/m
inline constexpr double electron_rest_energy_ev = 510998.95;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

//! Conversion between vacuum wavelength [m] and angular frequency [rad/s].
constexpr double omega_from_wavelength(double lambda) { return two_pi * c_light / lambda; }
constexpr double wavelength_from_omega(double omega) { return two_pi * c_light / omega; }
} // namespace cqcl::constants
