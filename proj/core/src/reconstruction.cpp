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
#include "cqcl/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"

namespace cqcl
{
std::string_view to_string(CoherenceStatus status)
{
    switch (status)
    {
        case CoherenceStatus::GaussianFit: return "gaussian_fit";
        case CoherenceStatus::SecondMoment: return "second_moment";
        case CoherenceStatus::BandLimited: return "band_limited";
        case CoherenceStatus::Fringed: return "fringed";
    }
    return "?";
}

AntidiagonalProfile antidiagonal_profile(PhotonDensityMatrix const& pdm, double diagonal_floor)
{
    auto const n = pdm.size();
    auto const& grid = pdm.omega;
    double const pos = (pdm.meta.omega_0 - grid.start) / grid.step;
    if (pos < 0.0 || pos > static_cast<double>(n - 1))
        fail(ErrorCode::InvalidArgument, "band center lies outside the frequency grid");

    AntidiagonalProfile prof;
    prof.center = static_cast<std::size_t>(std::lround(pos));
    auto const diag = power_spectrum(pdm);
    double dmax = 0.0;
    for (double d : diag)
        dmax = std::max(dmax, d);
    double const floor = diagonal_floor * dmax;
    if (!(diag[prof.center] > floor))
        fail(ErrorCode::InvalidArgument, "no spectral power at the band center");

    for (std::size_t k = 0; prof.center + k < n && k <= prof.center; ++k)
    {
        std::size_t const i = prof.center + k;
        std::size_t const j = prof.center - k;
        if (!(diag[i] > floor && diag[j] > floor))
            break;
        double const v = std::abs(pdm.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        prof.delta.push_back(grid.value(i) - grid.value(j));
        prof.value.push_back(v / std::sqrt(diag[i] * diag[j]));
    }
    return prof;
}

CoherenceResult coherence_width(PhotonDensityMatrix const& pdm, CoherenceOptions const& options)
{
    CoherenceResult res;
    res.profile = antidiagonal_profile(pdm, options.diagonal_floor);
    auto const& d = res.profile.delta;
    auto const& f = res.profile.value;
    res.delta_max = d.back();

    auto& m = res.measurement;
    m.omega_0 = pdm.meta.omega_0;
    m.v_g = constants::c_light / pdm.meta.group_index_0;
    m.r_hat = pdm.meta.r_hat;
    m.n_used = pdm.meta.index_0;
    m.theta_c = pdm.meta.theta_c;

    if (d.size() < 3)
    {
        res.status = CoherenceStatus::BandLimited;
        m.delta_omega_coh = std::max(res.delta_max, pdm.omega.step);
        return res;
    }

    // interior maxima standing out from the preceding minimum
    double running_min = f.front();
    for (std::size_t k = 1; k + 1 < f.size(); ++k)
    {
        running_min = std::min(running_min, f[k]);
        if (f[k] > f[k - 1] && f[k] >= f[k + 1] && f[k] - running_min > options.fringe_prominence)
        {
            // three-point parabolic refinement of the peak position
            double const curv = f[k - 1] - 2.0 * f[k] + f[k + 1];
            double const shift = curv < 0.0 ? 0.5 * (f[k - 1] - f[k + 1]) / curv : 0.0;
            res.fringe_peaks.push_back(d[k] + shift * (d[k + 1] - d[k]));
            running_min = f[k];
        }
    }

    // weighted least squares for ln f = a - b d^2, weights f^2
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t k = 0; k < d.size(); ++k)
    {
        if (!(f[k] > 1e-300))
            continue;
        double const w = f[k] * f[k];
        double const x = d[k] * d[k];
        double const y = std::log(f[k]);
        s0 += w;
        s1 += w * x;
        s2 += w * x * x;
        t0 += w * y;
        t1 += w * x * y;
    }
    double const det = s0 * s2 - s1 * s1;
    double const b = det != 0.0 ? -(s0 * t1 - s1 * t0) / det : 0.0;
    double const a = det != 0.0 ? (t0 + b * s1) / s0 : 0.0;

    double width = std::numeric_limits<double>::infinity();
    if (b > 0.0)
    {
        width = 1.0 / std::sqrt(2.0 * b);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k)
        {
            double const g = std::exp(a - b * d[k] * d[k]);
            num += (f[k] - g) * (f[k] - g);
            den += f[k] * f[k];
        }
        res.fit_residual = std::sqrt(num / den);
    }
    else
    {
        res.fit_residual = 1.0;
    }

    if (!res.fringe_peaks.empty())
    {
        res.status = CoherenceStatus::Fringed;
    }
    else if (!(b > 0.0) || width >= res.delta_max)
    {
        res.status = CoherenceStatus::BandLimited;
        width = res.delta_max;
    }
    else if (res.fit_residual > options.max_residual)
    {
        res.status = CoherenceStatus::SecondMoment;
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k)
        {
            num += d[k] * d[k] * f[k];
            den += f[k];
        }
        width = std::sqrt(num / den);
    }
    else
    {
        res.status = CoherenceStatus::GaussianFit;
    }
    if (!std::isfinite(width))
        width = res.delta_max;
    m.delta_omega_coh = width;
    return res;
}

double size_from_coherence(CoherenceMeasurement const& m)
{
    if (!(m.delta_omega_coh > 0.0))
        fail(ErrorCode::InvalidArgument, "coherence width must be positive");
    if (!(m.v_g > 0.0 && m.v_g < constants::c_light))
        fail(ErrorCode::InvalidArgument, "group velocity must lie in (0, c)");
    return m.v_g / m.delta_omega_coh;
}

ReconstructionResult multi_cone_fit(std::vector<CoherenceMeasurement> const& measurements)
{
    if (measurements.size() < 2)
        fail(ErrorCode::IllConditioned, "at least two cone measurements are needed");

    std::vector<double> theta;
    for (auto const& m : measurements)
    {
        if (!(m.delta_omega_coh > 0.0 && m.v_g > 0.0))
            fail(ErrorCode::InvalidArgument, "measurement has non-positive width or velocity");
        theta.push_back(std::acos(std::clamp(m.r_hat.normalized().z(), -1.0, 1.0)));
    }
    double const one_degree = constants::pi / 180.0;
    bool spread = false;
    for (std::size_t i = 0; i < theta.size() && !spread; ++i)
        for (std::size_t j = i + 1; j < theta.size() && !spread; ++j)
            spread = std::abs(theta[i] - theta[j]) > one_degree;
    if (!spread)
        fail(ErrorCode::IllConditioned, "cone angles differ by less than one degree");

    auto const rows = static_cast<Eigen::Index>(measurements.size());
    Eigen::MatrixXd a(rows, 2);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        double const c = std::cos(theta[static_cast<std::size_t>(i)]);
        auto const& m = measurements[static_cast<std::size_t>(i)];
        a(i, 0) = c * c;
        a(i, 1) = 1.0 - c * c;
        double const s = m.v_g / m.delta_omega_coh;
        y(i) = s * s;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    auto const& sv = svd.singularValues();
    ReconstructionResult res;
    res.condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
    if (!(res.condition <= max_fit_condition))
        fail(ErrorCode::IllConditioned, "cone design matrix is numerically singular");

    Eigen::Vector2d x = svd.solve(y);
    res.variance_parallel = x(0);
    res.variance_perpendicular = x(1);
    res.residual = (a * x - y).norm() / y.norm();
    res.negative_variance = x(0) < 0.0 || x(1) < 0.0;
    res.parallel = std::sqrt(std::max(0.0, x(0)));
    res.perpendicular = std::sqrt(std::max(0.0, x(1)));
    return res;
}

InteractionWindow interaction_length_window(double lambda,
                                            double delta_lambda,
                                            DispersionModel const& model,
                                            double beta,
                                            std::optional<double> interaction_length)
{
    if (!(delta_lambda > 0.0))
        fail(ErrorCode::InvalidArgument, "detection bandwidth must be positive");
    double const n = model.refractive_index(lambda);
    if (!(beta * n > 1.0))
        fail(ErrorCode::BelowThreshold, "beta*n <= 1 at the center wavelength");
    double const dn = std::abs(n - model.group_index(lambda));

    InteractionWindow w;
    w.l_min = lambda / n;
    if (dn <= 1e-12 * n)
    {
        w.unbounded = true;
        w.l_max = std::numeric_limits<double>::infinity();
    }
    else
    {
        w.l_max = (n / dn) * (lambda / delta_lambda) * beta * lambda;
    }
    if (interaction_length)
        w.valid = *interaction_length >= 10.0 * w.l_min && *interaction_length <= w.l_max / 10.0;
    return w;
}
} // namespace cqcl
