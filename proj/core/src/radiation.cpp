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
#include "cqcl/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cqcl/constants.hpp"
#include "cqcl/digest.hpp"
#include "cqcl/error.hpp"

namespace cqcl
{
namespace
{
// Half-width of the support of T, in units of half the band.
double support_half_width(AcceptanceProfile profile, double roll_off)
{
    switch (profile)
    {
        case AcceptanceProfile::RaisedCosine: return 1.0 + roll_off;
        case AcceptanceProfile::Rect: return 1.0;
        case AcceptanceProfile::Gaussian: return 3.4;
    }
    return 1.0;
}

constexpr double grid_margin = 1.05;

std::string wavelength_text(double omega)
{
    std::ostringstream os;
    os << constants::wavelength_from_omega(omega) * 1e9 << " nm";
    return os.str();
}
} // namespace

std::string_view to_string(AcceptanceProfile profile)
{
    switch (profile)
    {
        case AcceptanceProfile::RaisedCosine: return "raised_cosine";
        case AcceptanceProfile::Rect: return "rect";
        case AcceptanceProfile::Gaussian: return "gaussian";
    }
    return "?";
}

AcceptanceProfile acceptance_from_string(std::string_view tag)
{
    for (auto p : {AcceptanceProfile::RaisedCosine, AcceptanceProfile::Rect, AcceptanceProfile::Gaussian})
    {
        if (to_string(p) == tag)
            return p;
    }
    fail(ErrorCode::ConfigError,
         "unknown acceptance profile '" + std::string(tag) + "' (supported: raised_cosine, rect, gaussian)");
}

double acceptance_value(AcceptanceProfile profile,
                        double roll_off,
                        double omega_lo,
                        double omega_hi,
                        double omega)
{
    double const half = 0.5 * (omega_hi - omega_lo);
    double const x = std::abs(omega - 0.5 * (omega_lo + omega_hi));
    switch (profile)
    {
        case AcceptanceProfile::RaisedCosine: {
            if (roll_off <= 0.0)
                return x <= half ? 1.0 : 0.0;
            double const flat = (1.0 - roll_off) * half;
            if (x <= flat)
                return 1.0;
            if (x >= (1.0 + roll_off) * half)
                return 0.0;
            return 0.5 * (1.0 + std::cos(constants::pi * (x - flat) / (2.0 * roll_off * half)));
        }
        case AcceptanceProfile::Rect: return x <= half ? 1.0 : 0.0;
        case AcceptanceProfile::Gaussian: {
            double const u = x / half;
            return std::exp(-std::log(2.0) * u * u);
        }
    }
    return 0.0;
}

DetectionWindow DetectionWindow::build(WindowSpec const& spec,
                                       DispersionModel const& model,
                                       ParticleKinematics const& kin)
{
    if (!(spec.lambda_lo > 0.0 && spec.lambda_hi > spec.lambda_lo))
        fail(ErrorCode::InvalidArgument, "detection band must satisfy 0 < lambda_lo < lambda_hi");
    if (!(spec.lambda_0 >= spec.lambda_lo && spec.lambda_0 <= spec.lambda_hi))
        fail(ErrorCode::InvalidArgument, "center wavelength must lie inside the detection band");
    if (!(spec.roll_off >= 0.0 && spec.roll_off <= 1.0))
        fail(ErrorCode::InvalidArgument, "roll-off must lie in [0, 1]");

    double const w_lo = constants::omega_from_wavelength(spec.lambda_hi);
    double const w_hi = constants::omega_from_wavelength(spec.lambda_lo);
    double const center = 0.5 * (w_lo + w_hi);
    double const h = grid_margin * support_half_width(spec.profile, spec.roll_off) * 0.5 * (w_hi - w_lo);
    if (!(center - h > 0.0))
        fail(ErrorCode::InvalidArgument, "detection band too wide for its acceptance skirts");

    DetectionWindow win;
    if (spec.n < min_grid_points || !is_power_of_two(spec.n))
        fail(ErrorCode::InvalidArgument,
             "frequency grid size " + std::to_string(spec.n)
                 + " must be a power of two and at least " + std::to_string(min_grid_points));
    win.grid_ = UniformGrid::linspace(center - h, center + h, spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
    {
        win.acceptance_.emplace_back(
            acceptance_value(spec.profile, spec.roll_off, w_lo, w_hi, win.grid_.value(i)), 0.0);
    }
    win.omega_0_ = constants::omega_from_wavelength(spec.lambda_0);
    win.geometry_ = cone_geometry(model, kin, win.omega_0_, spec.azimuth, spec.distance);
    win.validate();
    return win;
}

DetectionWindow DetectionWindow::custom(UniformGrid const& grid,
                                        std::vector<std::complex<double>> acceptance,
                                        double omega_0,
                                        ConeGeometry const& geometry)
{
    DetectionWindow win;
    win.grid_ = grid;
    win.acceptance_ = std::move(acceptance);
    win.omega_0_ = omega_0;
    win.geometry_ = geometry;
    win.validate();
    return win;
}

DetectionWindow DetectionWindow::scaled(double factor) const
{
    DetectionWindow win = *this;
    for (auto& t : win.acceptance_)
        t *= factor;
    return win;
}

void DetectionWindow::validate() const
{
    if (grid_.count < min_grid_points || !is_power_of_two(grid_.count))
        fail(ErrorCode::InvalidArgument,
             "frequency grid size " + std::to_string(grid_.count)
                 + " must be a power of two and at least " + std::to_string(min_grid_points));
    if (!(grid_.step > 0.0 && grid_.start > 0.0))
        fail(ErrorCode::InvalidArgument, "frequency grid must be positive and increasing");
    if (acceptance_.size() != grid_.count)
        fail(ErrorCode::InvalidArgument, "acceptance and grid sizes differ");
    double peak = 0.0;
    for (auto const& t : acceptance_)
    {
        if (!(std::abs(t) <= 1.0 + 1e-12))
            fail(ErrorCode::InvalidArgument, "acceptance magnitude exceeds 1");
        peak = std::max(peak, std::abs(t));
    }
    if (std::abs(acceptance_.front()) >= 1e-3 * peak && peak > 0.0)
        fail(ErrorCode::InvalidArgument, "acceptance does not vanish at the low grid edge");
    if (std::abs(acceptance_.back()) >= 1e-3 * peak && peak > 0.0)
        fail(ErrorCode::InvalidArgument, "acceptance does not vanish at the high grid edge");
    if (!(geometry_.distance > 0.0) || std::abs(geometry_.r_hat.norm() - 1.0) > 1e-9)
        fail(ErrorCode::InvalidArgument, "observation geometry is malformed");
}

//---------------------------------------------------------------------------//

std::string emitter_hash(ElectronState const& state)
{
    return sha256_hex(state.describe()).substr(0, 16);
}

EmissionAmplitudes emission_amplitudes(ParticleKinematics const& kin,
                                       DispersionModel const& model,
                                       DetectionWindow const& win)
{
    using namespace constants;
    auto const& grid = win.grid();
    EmissionAmplitudes out;
    out.a.resize(grid.count);
    out.q.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
    {
        double const w = grid.value(i);
        double const idx = model.index_at_omega(w);
        double const bn = kin.beta * idx;
        if (!(bn > 1.0))
        {
            std::ostringstream os;
            os << "beta*n = " << bn << " <= 1 at omega = " << w << " rad/s ("
               << wavelength_text(w) << ")";
            fail(ErrorCode::BelowThreshold, os.str());
        }
        double const sin2 = 1.0 - 1.0 / (bn * bn);
        double const u0 = hbar * w * fine_structure * kin.beta * sin2;
        out.a[i] = std::sqrt(u0 / two_pi) * win.acceptance()[i];
        out.q[i] = idx * w / c_light;
    }
    return out;
}

PhotonDensityMatrix spectral_autocorrelation(ElectronState const& state,
                                             ParticleKinematics const& kin,
                                             DispersionModel const& model,
                                             DetectionWindow const& win)
{
    auto const& grid = win.grid();
    auto const n = grid.count;
    Vec3 const& r_hat = win.geometry().r_hat;
    auto const [a, q] = emission_amplitudes(kin, model, win);

    double const width = std::sqrt(projected_moments(state, r_hat).variance);
    double max_dq = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        max_dq = std::max(max_dq, std::abs(q[i] - q[i - 1]));
    if (max_dq * width > constants::pi)
    {
        std::ostringstream os;
        os << "frequency step resolves the emitter coherence too coarsely (dq * width = "
           << max_dq * width << " > pi)";
        fail(ErrorCode::GridTooCoarse, os.str());
    }

    PhotonDensityMatrix pdm;
    pdm.omega = grid;
    pdm.m.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
    {
        auto const jj = static_cast<Eigen::Index>(j);
        pdm.m(jj, jj) = std::norm(a[j]);
        for (std::size_t i = j + 1; i < n; ++i)
        {
            auto const ii = static_cast<Eigen::Index>(i);
            auto const v = a[i] * std::conj(a[j]) * momentum_coherence(state, q[i] - q[j], r_hat);
            pdm.m(ii, jj) = v;
            pdm.m(jj, ii) = std::conj(v);
        }
    }

    auto& meta = pdm.meta;
    meta.emitter_hash = emitter_hash(state);
    meta.emitter_kind = std::string(to_string(state.kind()));
    meta.material = model.name();
    meta.beta = kin.beta;
    meta.omega_0 = win.omega_0();
    meta.theta_c = win.geometry().theta_c;
    meta.azimuth = win.geometry().azimuth;
    meta.distance = win.geometry().distance;
    meta.index_0 = model.index_at_omega(win.omega_0());
    meta.group_index_0 = model.group_index_at_omega(win.omega_0());
    meta.r_hat = r_hat;
    return pdm;
}

std::vector<double> power_spectrum(PhotonDensityMatrix const& pdm)
{
    std::vector<double> s(pdm.size());
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        auto const ii = static_cast<Eigen::Index>(i);
        s[i] = pdm.m(ii, ii).real();
    }
    return s;
}

double spectral_rms_width(PhotonDensityMatrix const& pdm)
{
    auto const s = power_spectrum(pdm);
    double sum = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        sum += s[i];
        m1 += s[i] * pdm.omega.value(i);
    }
    if (!(sum > 0.0))
        fail(ErrorCode::DegenerateEnvelope, "power spectrum is zero");
    m1 /= sum;
    double m2 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        double const d = pdm.omega.value(i) - m1;
        m2 += s[i] * d * d;
    }
    return std::sqrt(m2 / sum);
}

double effective_group_velocity(PhotonDensityMatrix const& pdm, DispersionModel const& model)
{
    auto const s = power_spectrum(pdm);
    double sum = 0.0, ng = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] <= 0.0)
            continue;
        sum += s[i];
        ng += s[i] * model.group_index_at_omega(pdm.omega.value(i));
    }
    if (!(sum > 0.0))
        fail(ErrorCode::DegenerateEnvelope, "power spectrum is zero");
    return constants::c_light * sum / ng;
}

PhotonDensityMatrix add_noise(PhotonDensityMatrix pdm, double amplitude, std::uint64_t seed)
{
    if (!(amplitude >= 0.0))
        fail(ErrorCode::InvalidArgument, "noise amplitude must be non-negative");
    if (amplitude == 0.0)
        return pdm;
    double const sd = amplitude * pdm.m.cwiseAbs().maxCoeff();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sd / std::sqrt(2.0));
    auto const n = pdm.m.rows();
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        for (Eigen::Index i = 0; i < n; ++i)
        {
            double const re = normal(rng);
            double const im = normal(rng);
            e(i, j) = {re, im};
        }
    }
    pdm.m += 0.5 * (e + e.adjoint());
    for (Eigen::Index i = 0; i < n; ++i)
        pdm.m(i, i) = pdm.m(i, i).real();
    return pdm;
}

HermitianReport check_hermitian_psd(Eigen::MatrixXcd const& m)
{
    HermitianReport r;
    double const scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return r;
    r.hermitian_error = (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
    Eigen::MatrixXcd const h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = eig.eigenvalues().minCoeff();
    r.max_eigenvalue = eig.eigenvalues().maxCoeff();
    return r;
}
} // namespace cqcl
