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

#include <optional>
#include <string_view>
#include <vector>

#include "cqcl/medium.hpp"
#include "cqcl/radiation.hpp"

namespace cqcl
{
struct CoherenceMeasurement
{
    double delta_omega_coh = 0.0; // 1-sigma spectral coherence width [rad/s]
    double omega_0 = 0.0;
    double v_g = 0.0;
    Vec3 r_hat = Vec3::UnitZ();
    double n_used = 1.0;
    double theta_c = 0.0;
};

enum class CoherenceStatus
{
    GaussianFit,  // Gaussian fit accepted
    SecondMoment, // fit residual too large, second-moment width used
    BandLimited,  // profile does not decay inside the band; width is a lower bound
    Fringed,      // oscillatory profile (fit failure); fringe peaks reported
};

std::string_view to_string(CoherenceStatus status);

struct CoherenceOptions
{
    double diagonal_floor = 1e-3; // relative to the largest diagonal element
    double max_residual = 0.05;
    double fringe_prominence = 0.1;
};

//! Normalized antidiagonal |M(w0 + d/2, w0 - d/2)| / sqrt(diag diag).
struct AntidiagonalProfile
{
    std::size_t center = 0;
    std::vector<double> delta; // [rad/s], starts at 0
    std::vector<double> value;
};

struct CoherenceResult
{
    CoherenceMeasurement measurement;
    CoherenceStatus status = CoherenceStatus::GaussianFit;
    double fit_residual = 0.0;
    double delta_max = 0.0; // largest usable separation
    AntidiagonalProfile profile;
    std::vector<double> fringe_peaks; // separations of interior maxima

    bool ok() const
    {
        return status == CoherenceStatus::GaussianFit || status == CoherenceStatus::SecondMoment;
    }
};

AntidiagonalProfile antidiagonal_profile(PhotonDensityMatrix const& pdm,
                                         double diagonal_floor = 1e-3);

CoherenceResult coherence_width(PhotonDensityMatrix const& pdm, CoherenceOptions const& options = {});

/*!
 * Which width of the coherence profile is fed to size = v_g / d_omega.
 * Sigma makes the estimate exact for Gaussian emitters; Fwhm uses
 * d_omega = fwhm_per_sigma * sigma and so reports sizes smaller by that factor.
 */
enum class WidthConvention
{
    Sigma,
    Fwhm,
};

inline constexpr double fwhm_per_sigma = 2.3548200450309493; // 2 sqrt(2 ln 2)

//! v_g / delta_omega_coh
double size_from_coherence(CoherenceMeasurement const& m);

struct ReconstructionResult
{
    double parallel = 0.0;      // 1-sigma extent along the carrier [m]
    double perpendicular = 0.0; // across the carrier [m]
    double variance_parallel = 0.0;  // unclamped least-squares values [m^2]
    double variance_perpendicular = 0.0;
    double residual = 0.0; // |A x - y| / |y|
    double condition = 0.0;
    bool negative_variance = false; // a component was clamped to zero
};

inline constexpr double max_fit_condition = 1e8;

ReconstructionResult multi_cone_fit(std::vector<CoherenceMeasurement> const& measurements);

struct InteractionWindow
{
    double l_min = 0.0;
    double l_max = 0.0; // +inf when unbounded
    bool unbounded = false;
    std::optional<bool> valid; // verdict for the supplied length
};

/*!
 * lambda/n << L << (n/|n - n_g|)(lambda/d_lambda) beta lambda, with "<<"
 * read as a factor of 10.
 */
InteractionWindow interaction_length_window(double lambda,
                                            double delta_lambda,
                                            DispersionModel const& model,
                                            double beta,
                                            std::optional<double> interaction_length = {});
} // namespace cqcl
