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
#include "cqcl/oracle.hpp"

#include <cmath>

#include "cqcl/error.hpp"

namespace cqcl::oracle
{
namespace
{
using cplx = std::complex<double>;

UniformGrid density_grid(ElectronState const& state, Vec3 const& dir, std::size_t samples)
{
    auto const mom = projected_moments(state, dir);
    double const sd = std::sqrt(mom.variance);
    return UniformGrid::linspace(mom.mean - 8.0 * sd, mom.mean + 8.0 * sd, samples);
}

double field_power(EmissionAmplitudes const& em, UniformGrid const& omega, double x, double t)
{
    cplx sum{};
    for (std::size_t i = 0; i < em.a.size(); ++i)
        sum += em.a[i] * std::polar(1.0, em.q[i] * x - omega.value(i) * t);
    return std::norm(sum * omega.step);
}
} // namespace

std::complex<double> analytic_coherence(AnalyticGaussianCase const& c, double omega, double omega_prime)
{
    long double const u = (static_cast<long double>(omega) - static_cast<long double>(omega_prime))
                          * static_cast<long double>(c.size) / static_cast<long double>(c.v_g);
    return static_cast<double>(std::exp(-0.5L * u * u));
}

std::complex<double> quadrature_temporal(PhotonDensityMatrix const& pdm, double t, double t_prime)
{
    auto const n = pdm.size();
    if (n > max_quadrature_size)
        fail(ErrorCode::TooLarge, "quadrature oracle is limited to N <= 256");
    double const dw = pdm.omega.step;
    cplx sum{};
    for (std::size_t i = 0; i < n; ++i)
    {
        cplx const ei = std::polar(1.0, -pdm.omega.value(i) * t);
        for (std::size_t j = 0; j < n; ++j)
        {
            sum += ei * std::polar(1.0, pdm.omega.value(j) * t_prime)
                   * pdm.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return dw * dw * sum;
}

Eigen::MatrixXcd quadrature_temporal_matrix(PhotonDensityMatrix const& pdm,
                                            std::vector<double> const& times)
{
    auto const n = pdm.size();
    if (n > max_quadrature_size)
        fail(ErrorCode::TooLarge, "quadrature oracle is limited to N <= 256");
    auto const k = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXcd f(k, static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < k; ++r)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            f(r, static_cast<Eigen::Index>(i))
                = pdm.omega.step * std::polar(1.0, -pdm.omega.value(i) * times[static_cast<std::size_t>(r)]);
        }
    }
    return f * pdm.m * f.adjoint();
}

std::vector<double> superposition_envelope(ElectronState const& state,
                                           ParticleKinematics const& kin,
                                           DispersionModel const& model,
                                           DetectionWindow const& win,
                                           std::vector<double> const& times,
                                           std::size_t density_samples)
{
    auto const em = emission_amplitudes(kin, model, win);
    Vec3 const& dir = win.geometry().r_hat;
    auto const xs = density_grid(state, dir, density_samples);
    auto const rho = projected_density(state, dir, xs);
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        double sum = 0.0;
        for (std::size_t m = 0; m < xs.count; ++m)
        {
            double const w = (m == 0 || m + 1 == xs.count) ? 0.5 : 1.0;
            sum += w * rho[m] * field_power(em, win.grid(), xs.value(m), times[k]);
        }
        out[k] = sum * xs.step;
    }
    return out;
}

std::vector<double> point_envelope(ParticleKinematics const& kin,
                                   DispersionModel const& model,
                                   DetectionWindow const& win,
                                   std::vector<double> const& times)
{
    auto const em = emission_amplitudes(kin, model, win);
    std::vector<double> out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k)
        out[k] = field_power(em, win.grid(), 0.0, times[k]);
    return out;
}

std::vector<double> convolution_envelope(ElectronState const& state,
                                         ParticleKinematics const& kin,
                                         DispersionModel const& model,
                                         DetectionWindow const& win,
                                         double v_g,
                                         std::vector<double> const& times,
                                         std::size_t density_samples)
{
    auto const em = emission_amplitudes(kin, model, win);
    Vec3 const& dir = win.geometry().r_hat;
    auto const xs = density_grid(state, dir, density_samples);
    auto const rho = projected_density(state, dir, xs);
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        double sum = 0.0;
        for (std::size_t m = 0; m < xs.count; ++m)
        {
            double const w = (m == 0 || m + 1 == xs.count) ? 0.5 : 1.0;
            sum += w * rho[m] * field_power(em, win.grid(), 0.0, times[k] - xs.value(m) / v_g);
        }
        out[k] = sum * xs.step;
    }
    return out;
}
} // namespace cqcl::oracle
