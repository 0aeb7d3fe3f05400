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
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cqcl/grid.hpp"
#include "cqcl/medium.hpp"

namespace cqcl
{
using complex = std::complex<double>;

//! Gaussian wavepacket; variance is the covariance of |psi|^2 [m^2].
struct GaussianPure
{
    Eigen::Matrix3d variance = Eigen::Matrix3d::Identity();
};

/*!
 * Partially coherent 1D state along the observation axis,
 * rho(x, x') ~ exp(-(x^2 + x'^2)/(4 sigma^2)) exp(-(x - x')^2/(2 xi^2)).
 */
struct GaussianSchell
{
    double sigma_x = 0.0;
    double xi = 0.0;
};

/*!
 * Laser-modulated energy ladder. The longitudinal density is
 * |sum_n c_n exp(i n K z)|^2 times a Gaussian envelope, K = Omega/v0, and the
 * transverse profile is Gaussian with transverse_sigma.
 */
struct PinemComb
{
    complex coupling{0.0, 0.0};
    double omega_mod = 0.0;     // [rad/s]
    double carrier_speed = 0.0; // v0 [m/s]
    double envelope_sigma = 0.0;
    double transverse_sigma = 0.0;
    int n_max = 0;
    std::vector<complex> amplitudes; // c_n for n = -n_max..n_max
    std::vector<double> phases;      // applied phase per sideband
    // B_m = sum_n c_n conj(c_{n-m}), m = -2 n_max..2 n_max, and the density
    // normalization Z = sum_m B_m exp(-m^2 K^2 sigma^2 / 2)
    std::vector<complex> beats;
    double norm = 1.0;

    complex amplitude(int n) const;
    complex beat(int m) const;
    double wavenumber() const { return omega_mod / carrier_speed; }
};

//! Tabulated projected density on a uniform grid [1/m], trapezoid-normalized.
struct EmpiricalDensity
{
    UniformGrid grid;
    std::vector<double> density;
    double applied_factor = 1.0; // multiplier used to normalize the input
};

enum class EmitterKind
{
    GaussianPure,
    GaussianSchell,
    PinemComb,
    EmpiricalDensity,
};

std::string_view to_string(EmitterKind kind);

class ElectronState
{
  public:
    using Payload = std::variant<GaussianPure, GaussianSchell, PinemComb, EmpiricalDensity>;

    static ElectronState gaussian(Eigen::Matrix3d const& variance);
    static ElectronState spherical_gaussian(double sigma);
    //! Axially symmetric about z: sigma_par along z, sigma_perp across.
    static ElectronState axial_gaussian(double sigma_par, double sigma_perp);
    //! Classical point charge, rho == 1 to double precision.
    static ElectronState point();
    static ElectronState gaussian_schell(double sigma_x, double xi);
    static ElectronState empirical(UniformGrid const& grid, std::vector<double> density);
    static ElectronState pinem(PinemComb comb);

    EmitterKind kind() const;
    Payload const& payload() const { return payload_; }

    template<class T>
    T const* get() const
    {
        return std::get_if<T>(&payload_);
    }

    //! Canonical text, stable across runs; feeds the descriptor hash.
    std::string describe() const;

  private:
    explicit ElectronState(Payload p) : payload_(std::move(p)) {}
    Payload payload_;
};

//! Two-column text: position [nm], density [1/nm]; '#' comments.
ElectronState load_empirical_density(std::filesystem::path const& path);

struct PhaseRule
{
    enum class Kind
    {
        Quadratic,
        Explicit,
    };
    Kind kind = Kind::Quadratic;
    double b = 0.0;              // phi_n = b n^2
    std::vector<double> explicit_phases; // index n + (size - 1)/2

    static PhaseRule quadratic(double b) { return {Kind::Quadratic, b, {}}; }
    static PhaseRule explicit_list(std::vector<double> phases)
    {
        return {Kind::Explicit, 0.0, std::move(phases)};
    }
};

inline constexpr int default_sideband_cap = 200;

ElectronState make_pinem(complex coupling,
                         double omega_mod,
                         double carrier_speed,
                         double envelope_sigma,
                         PhaseRule const& rule,
                         double transverse_sigma = 0.0,
                         int n_cap = default_sideband_cap);

//! r^T Delta^2 r for Gaussian states; UnsupportedVariant otherwise.
double projected_variance(ElectronState const& state, Vec3 const& direction);

struct ProjectedMoments
{
    double mean = 0.0;
    double variance = 0.0;
};

//! First two moments of the projected density, any variant.
ProjectedMoments projected_moments(ElectronState const& state, Vec3 const& direction);

//! Fourier transform of the projected density at wavenumber delta_q along direction.
complex momentum_coherence(ElectronState const& state,
                           double delta_q,
                           Vec3 const& direction = Vec3::UnitZ());

//! Projected density sampled on grid [1/m].
std::vector<double> projected_density(ElectronState const& state,
                                      Vec3 const& direction,
                                      UniformGrid const& grid);

inline constexpr std::size_t min_density_samples = 512;

//! Delta_eps = hbar v / r in eV.
double energy_size_map(double radius, ParticleKinematics const& kin);
//! r = hbar v / Delta_eps.
double size_from_energy_spread(double energy_spread_ev, ParticleKinematics const& kin);

struct SchellUncertainty
{
    double total = 0.0;    // Delta p [kg m/s]
    double coherent = 0.0; // delta p [kg m/s]
};

SchellUncertainty schell_uncertainties(double sigma_x, double xi);
} // namespace cqcl
