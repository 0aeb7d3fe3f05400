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

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "cqcl/emitter.hpp"
#include "cqcl/radiation.hpp"

namespace cqcl::oracle
{
/*!
 * Slow reference paths. None of these are used by the engine; they exist
 * to audit its results.
 */
struct AnalyticGaussianCase
{
    double size = 0.0;     // 1-sigma emitter extent [m]
    double v_g = 0.0;      // [m/s]
    double omega_lo = 0.0; // band edges [rad/s]
    double omega_hi = 0.0;
    AcceptanceProfile profile = AcceptanceProfile::RaisedCosine;
};

//! exp(-((w - w') size / v_g)^2 / 2), evaluated in extended precision.
std::complex<double> analytic_coherence(AnalyticGaussianCase const& c, double omega, double omega_prime);

inline constexpr std::size_t max_quadrature_size = 256;

//! Direct double sum for C(t, t'); TooLarge above max_quadrature_size.
std::complex<double> quadrature_temporal(PhotonDensityMatrix const& pdm, double t, double t_prime);

//! Same sum on a set of times, as an explicit kernel product F M F^H.
Eigen::MatrixXcd quadrature_temporal_matrix(PhotonDensityMatrix const& pdm,
                                            std::vector<double> const& times);

/*!
 * Incoherent superposition of classical point-charge pulses with exact
 * dispersion: P(t) = sum_x rho(x) |sum_i a_i exp(i q_i x - i w_i t) dw|^2 dx.
 */
std::vector<double> superposition_envelope(ElectronState const& state,
                                           ParticleKinematics const& kin,
                                           DispersionModel const& model,
                                           DetectionWindow const& win,
                                           std::vector<double> const& times,
                                           std::size_t density_samples = 1024);

/*!
 * Point-emitter envelope convolved with the emitter density mapped to time
 * by t = x / v_g (linearized dispersion).
 */
std::vector<double> convolution_envelope(ElectronState const& state,
                                         ParticleKinematics const& kin,
                                         DispersionModel const& model,
                                         DetectionWindow const& win,
                                         double v_g,
                                         std::vector<double> const& times,
                                         std::size_t density_samples = 1024);

//! |sum_i a_i exp(-i w_i t) dw|^2 for the point emitter.
std::vector<double> point_envelope(ParticleKinematics const& kin,
                                   DispersionModel const& model,
                                   DetectionWindow const& win,
                                   std::vector<double> const& times);
} // namespace cqcl::oracle
