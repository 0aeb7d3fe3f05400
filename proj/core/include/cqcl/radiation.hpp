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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cqcl/emitter.hpp"
#include "cqcl/grid.hpp"
#include "cqcl/medium.hpp"

namespace cqcl
{
enum class AcceptanceProfile
{
    RaisedCosine, // flat core, cosine skirts, half amplitude at the band edges
    Rect,         // 1 inside the band, 0 outside
    Gaussian,     // half amplitude at the band edges
};

std::string_view to_string(AcceptanceProfile profile);
AcceptanceProfile acceptance_from_string(std::string_view tag);

struct WindowSpec
{
    double lambda_lo = 400e-9; // band edges, vacuum wavelength [m]
    double lambda_hi = 700e-9;
    double lambda_0 = 550e-9;  // observation center
    std::size_t n = 256;
    AcceptanceProfile profile = AcceptanceProfile::RaisedCosine;
    double roll_off = 0.5;     // raised-cosine excess bandwidth
    double distance = 1.0;     // [m]
    double azimuth = 0.0;      // [rad]
};

/*!
 * Frequency grid, spectral amplitude acceptance and observation geometry.
 *
 * The grid covers the support of T(omega) with a 5% margin on each side, so
 * T is below 1e-3 of its peak at both ends.
 */
class DetectionWindow
{
  public:
    static DetectionWindow build(WindowSpec const& spec,
                                 DispersionModel const& model,
                                 ParticleKinematics const& kin);
    //! Arbitrary acceptance on a given grid; validated like build().
    static DetectionWindow custom(UniformGrid const& grid,
                                  std::vector<std::complex<double>> acceptance,
                                  double omega_0,
                                  ConeGeometry const& geometry);

    UniformGrid const& grid() const { return grid_; }
    std::vector<std::complex<double>> const& acceptance() const { return acceptance_; }
    double omega_0() const { return omega_0_; }
    ConeGeometry const& geometry() const { return geometry_; }
    std::size_t size() const { return grid_.count; }

    //! Same grid and geometry, acceptance multiplied by a constant.
    DetectionWindow scaled(double factor) const;

  private:
    DetectionWindow() = default;
    void validate() const;

    UniformGrid grid_;
    std::vector<std::complex<double>> acceptance_;
    double omega_0_ = 0.0;
    ConeGeometry geometry_;
};

inline constexpr std::size_t min_grid_points = 64;

//! Amplitude acceptance at omega for a band [omega_lo, omega_hi].
double acceptance_value(AcceptanceProfile profile,
                        double roll_off,
                        double omega_lo,
                        double omega_hi,
                        double omega);

struct PdmMetadata
{
    std::string emitter_hash;
    std::string emitter_kind;
    std::string material;
    double beta = 0.0;
    double omega_0 = 0.0;
    double theta_c = 0.0;
    double azimuth = 0.0;
    double distance = 0.0;
    double index_0 = 1.0;       // n(omega_0)
    double group_index_0 = 1.0; // n_g(omega_0)
    Vec3 r_hat = Vec3::UnitZ();
};

/*!
 * Element (i, j) is <E-(omega_j) E+(omega_i)> times 2 r^2 eps0 n c; the
 * diagonal is the emitted power spectrum per (rad/s)^2.
 */
struct PhotonDensityMatrix
{
    UniformGrid omega;
    Eigen::MatrixXcd m;
    PdmMetadata meta;

    std::size_t size() const { return omega.count; }
};

//! a_i = sqrt(U0(w_i) / 2 pi) T(w_i) and q_i = n(w_i) w_i / c on the window grid.
struct EmissionAmplitudes
{
    std::vector<std::complex<double>> a;
    std::vector<double> q;
};

EmissionAmplitudes emission_amplitudes(ParticleKinematics const& kin,
                                       DispersionModel const& model,
                                       DetectionWindow const& win);

PhotonDensityMatrix spectral_autocorrelation(ElectronState const& state,
                                             ParticleKinematics const& kin,
                                             DispersionModel const& model,
                                             DetectionWindow const& win);

//! Truncated SHA-256 of the emitter's canonical description.
std::string emitter_hash(ElectronState const& state);

std::vector<double> power_spectrum(PhotonDensityMatrix const& pdm);

//! Power-weighted rms width of the spectrum [rad/s].
double spectral_rms_width(PhotonDensityMatrix const& pdm);

//! c / <n_g>, the average taken over the power spectrum.
double effective_group_velocity(PhotonDensityMatrix const& pdm, DispersionModel const& model);

/*!
 * Elementwise complex Gaussian perturbation with standard deviation
 * amplitude * max|M|, Hermitized so the result stays a Hermitian matrix.
 */
PhotonDensityMatrix add_noise(PhotonDensityMatrix pdm, double amplitude, std::uint64_t seed);

struct HermitianReport
{
    double hermitian_error = 0.0; // max|M - M^H| / max|M|
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

HermitianReport check_hermitian_psd(Eigen::MatrixXcd const& m);

//---------------------------------------------------------------------------//

struct TemporalOptions
{
    //! Zero-padding factor in frequency; the time step is 2 pi / (N os d_omega).
    std::size_t oversample = 1;
    //! Keep only |t| <= half_span [s] when set; the full window otherwise.
    std::optional<double> half_span;
};

/*!
 * Retarded-time correlation C(t, t') = sum_ij dw^2 e^{-i w_i t + i w_j t'} M_ij
 * on t_k = (k - N_p/2) dt, N_p = N * oversample.
 */
struct ShockwaveProfile
{
    UniformGrid time;            // kept samples
    std::size_t first_index = 0; // index of time.start in the full window
    std::size_t padded_size = 0; // N_p
    Eigen::MatrixXcd c;          // (k, l) = C(t_k, t_l)
    std::vector<double> power;   // C(t_k, t_k)
    UniformGrid omega;
    std::vector<double> spectrum; // diag M, used for g1

    double window() const { return time.step * static_cast<double>(padded_size); }
    bool is_full_window() const { return time.count == padded_size; }
};

ShockwaveProfile temporal_autocorrelation(PhotonDensityMatrix const& pdm,
                                          TemporalOptions const& options = {});

//! M = F^H C F / (N_p^2 dw^4); needs a full-window profile.
Eigen::MatrixXcd inverse_temporal(ShockwaveProfile const& profile);

//! Time-integrated first-order coherence; OutOfWindow for |tau| > window/2.
std::complex<double> g1(ShockwaveProfile const& profile, double tau);
//! g1 at every kept time sample.
std::vector<std::complex<double>> g1_series(ShockwaveProfile const& profile);

struct EnvelopeStats
{
    double mean = 0.0; // [s]
    double std = 0.0;  // [s]
    double fwhm = 0.0; // [s]
    double peak = 0.0;
    double energy = 0.0; // sum P dt
};

EnvelopeStats envelope_stats(ShockwaveProfile const& profile);

//! FWHM of a sampled curve around its global maximum, linear interpolation.
double fwhm(UniformGrid const& x, std::vector<double> const& y);

//! v_g * std(t) of the power envelope.
double shock_position_width(ShockwaveProfile const& profile, double v_g);

//! (dx * dp) / (hbar / 2)
double uncertainty_check(double delta_x_shw, double delta_p);
} // namespace cqcl
