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

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cqcl
{
using Vec3 = Eigen::Vector3d;

//---------------------------------------------------------------------------//
/*!
 * Three-term Sellmeier form
 * \f[
 *   n^2(\lambda) = 1 + \sum_{i=1}^{3} \frac{B_i \lambda^2}{\lambda^2 - C_i},
 * \f]
 * with \f$\lambda\f$ in micrometres and \f$C_i\f$ in square micrometres.
 */
struct SellmeierCoefficients
{
    std::array<double, 3> b{};
    std::array<double, 3> c_um2{};
};

//---------------------------------------------------------------------------//
/*!
 * Refractive index model of a transparent, isotropic, lossless medium.
 *
 * Wavelengths are vacuum wavelengths in metres. Evaluation outside the
 * validity interval throws OutOfRange instead of extrapolating. A constant
 * index model has n_g = n exactly.
 */
class DispersionModel
{
  public:
    static DispersionModel sellmeier(std::string name,
                                     SellmeierCoefficients const& coeffs,
                                     double lambda_min,
                                     double lambda_max);
    static DispersionModel constant(double n,
                                    double lambda_min = 1e-9,
                                    double lambda_max = 1.0,
                                    std::string name = {});

    // n(lambda)
    double refractive_index(double lambda) const;
    // n_g(lambda) = n - lambda dn/dlambda, analytic derivative
    double group_index(double lambda) const;

    double index_at_omega(double omega) const;
    double group_index_at_omega(double omega) const;

    std::string const& name() const { return name_; }
    double lambda_min() const { return lambda_min_; }
    double lambda_max() const { return lambda_max_; }
    bool is_constant() const { return constant_; }
    SellmeierCoefficients const& coefficients() const { return coeffs_; }
    double constant_index() const { return n_const_; }

  private:
    DispersionModel() = default;

    void check_range(double lambda) const;
    double index_squared(double lambda_um) const;

    std::string name_;
    SellmeierCoefficients coeffs_;
    double lambda_min_ = 0.0;
    double lambda_max_ = 0.0;
    bool constant_ = false;
    double n_const_ = 1.0;
};

//! Malitson (1965) fused silica, valid 0.21-3.71 um.
DispersionModel fused_silica();

//---------------------------------------------------------------------------//
/*!
 * Named dispersion models, loadable from a key-value file:
 *
 *     [fused_silica]
 *     B = 0.6961663 0.4079426 0.8974794
 *     C_um2 = 0.00467914826 0.0135120631 97.9340025
 *     range_nm = 210 3710
 *
 * A section may instead give `n = 1.33` (and optionally `range_nm`) for a
 * constant-index medium.
 */
class MaterialRegistry
{
  public:
    //! Registry parsed from the bundled materials file.
    static MaterialRegistry builtin();
    static MaterialRegistry parse(std::string_view text, std::string_view source);
    static MaterialRegistry load(std::filesystem::path const& path);

    void add(DispersionModel model);
    bool contains(std::string_view name) const;
    DispersionModel const& get(std::string_view name) const;
    std::vector<std::string> names() const;

  private:
    std::map<std::string, DispersionModel, std::less<>> models_;
};

//---------------------------------------------------------------------------//
//! Carrier kinematics of the emitter; the carrier velocity is along +z.
struct ParticleKinematics
{
    double kinetic_energy_ev = 0.0;
    double rest_energy_ev = 0.0;
    double beta = 0.0;
    double gamma = 1.0;

    double speed() const;
    Vec3 velocity() const;
};

ParticleKinematics kinematics_from_kinetic(double kinetic_energy_ev,
                                           double rest_energy_ev);

//! Cherenkov semi-angle arccos(1/(beta n)); BelowThreshold when beta n < 1.
double cherenkov_angle(double beta, double n);

//! q = n(omega) omega / c [1/m].
double cherenkov_wavevector(DispersionModel const& model, double omega);

//---------------------------------------------------------------------------//
//! Observation geometry on the Cherenkov cone at band centre.
struct ConeGeometry
{
    double theta_c = 0.0;  // at omega_0 [rad]
    Vec3 r_hat = Vec3::UnitZ();
    double azimuth = 0.0;  // [rad]
    double distance = 1.0; // [m]
};

ConeGeometry cone_geometry(DispersionModel const& model,
                           ParticleKinematics const& kin,
                           double omega_0,
                           double azimuth,
                           double distance);

//! Unit vector at polar angle theta from +z and the given azimuth.
Vec3 direction_from_angles(double theta, double azimuth);
} // namespace cqcl
