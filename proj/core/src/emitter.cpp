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
#include "cqcl/emitter.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"

namespace cqcl
{
namespace
{
void check_direction(Vec3 const& d)
{
    if (std::abs(d.norm() - 1.0) > 1e-9)
        fail(ErrorCode::InvalidArgument, "observation direction must be a unit vector");
}

double trapezoid(std::vector<double> const& y, double step)
{
    if (y.size() < 2)
        return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        s += y[i];
    return s * step;
}

double gauss(double u, double var)
{
    return std::exp(-0.5 * u * u / var) / std::sqrt(constants::two_pi * var);
}

struct PinemAxes
{
    double c = 1.0; // cos of angle to the carrier axis
    double s2 = 0.0; // transverse variance seen along the direction
};

PinemAxes pinem_axes(PinemComb const& comb, Vec3 const& direction)
{
    double const c = direction.z();
    double const sin2 = std::max(0.0, 1.0 - c * c);
    return {c, comb.transverse_sigma * comb.transverse_sigma * sin2};
}

void fill_beats(PinemComb& comb)
{
    int const nb = 2 * comb.n_max;
    comb.beats.assign(2 * nb + 1, complex{});
    for (int m = -nb; m <= nb; ++m)
    {
        complex b{};
        for (int n = -comb.n_max; n <= comb.n_max; ++n)
        {
            int const k = n - m;
            if (k < -comb.n_max || k > comb.n_max)
                continue;
            b += comb.amplitude(n) * std::conj(comb.amplitude(k));
        }
        comb.beats[m + nb] = b;
    }
    double const ks = comb.wavenumber() * comb.envelope_sigma;
    double z = 0.0;
    for (int m = -nb; m <= nb; ++m)
        z += (comb.beat(m) * std::exp(-0.5 * m * m * ks * ks)).real();
    if (!(z > 0.0))
        fail(ErrorCode::InvalidArgument, "PINEM density normalizes to zero");
    comb.norm = z;
}
} // namespace

std::string_view to_string(EmitterKind kind)
{
    switch (kind)
    {
        case EmitterKind::GaussianPure: return "gaussian";
        case EmitterKind::GaussianSchell: return "gaussian_schell";
        case EmitterKind::PinemComb: return "pinem";
        case EmitterKind::EmpiricalDensity: return "empirical";
    }
    return "?";
}

complex PinemComb::amplitude(int n) const
{
    if (n < -n_max || n > n_max)
        return {};
    return amplitudes[static_cast<std::size_t>(n + n_max)];
}

complex PinemComb::beat(int m) const
{
    int const nb = 2 * n_max;
    if (m < -nb || m > nb)
        return {};
    return beats[static_cast<std::size_t>(m + nb)];
}

//---------------------------------------------------------------------------//

ElectronState ElectronState::gaussian(Eigen::Matrix3d const& variance)
{
    double const scale = variance.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || (variance - variance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        fail(ErrorCode::InvalidArgument, "variance matrix must be symmetric and nonzero");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(variance, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0))
        fail(ErrorCode::InvalidArgument, "variance matrix must be positive definite");
    return ElectronState(GaussianPure{variance});
}

ElectronState ElectronState::spherical_gaussian(double sigma)
{
    if (!(sigma > 0.0))
        fail(ErrorCode::InvalidArgument, "wavepacket size must be positive");
    return gaussian(sigma * sigma * Eigen::Matrix3d::Identity());
}

ElectronState ElectronState::axial_gaussian(double sigma_par, double sigma_perp)
{
    if (!(sigma_par > 0.0 && sigma_perp > 0.0))
        fail(ErrorCode::InvalidArgument, "wavepacket sizes must be positive");
    Eigen::Matrix3d v = Eigen::Matrix3d::Zero();
    v(0, 0) = v(1, 1) = sigma_perp * sigma_perp;
    v(2, 2) = sigma_par * sigma_par;
    return gaussian(v);
}

ElectronState ElectronState::point()
{
    return spherical_gaussian(1e-15);
}

ElectronState ElectronState::gaussian_schell(double sigma_x, double xi)
{
    if (!(sigma_x > 0.0 && xi > 0.0))
        fail(ErrorCode::InvalidArgument, "Gaussian-Schell widths must be positive");
    return ElectronState(GaussianSchell{sigma_x, xi});
}

ElectronState ElectronState::empirical(UniformGrid const& grid, std::vector<double> density)
{
    if (grid.count < 2 || density.size() != grid.count || !(grid.step > 0.0))
        fail(ErrorCode::InvalidArgument, "empirical density needs >= 2 samples on an increasing grid");
    for (double p : density)
    {
        if (!(p >= 0.0) || !std::isfinite(p))
            fail(ErrorCode::InvalidArgument, "empirical density must be finite and non-negative");
    }
    double const total = trapezoid(density, grid.step);
    if (!(total > 0.0))
        fail(ErrorCode::InvalidArgument, "empirical density integrates to zero");
    double const factor = 1.0 / total;
    for (double& p : density)
        p *= factor;
    return ElectronState(EmpiricalDensity{grid, std::move(density), factor});
}

ElectronState ElectronState::pinem(PinemComb comb)
{
    if (!(comb.omega_mod > 0.0 && comb.carrier_speed > 0.0 && comb.envelope_sigma > 0.0)
        || comb.transverse_sigma < 0.0 || comb.n_max < 0
        || comb.amplitudes.size() != static_cast<std::size_t>(2 * comb.n_max + 1))
    {
        fail(ErrorCode::InvalidArgument, "malformed PINEM comb");
    }
    fill_beats(comb);
    return ElectronState(std::move(comb));
}

EmitterKind ElectronState::kind() const
{
    return static_cast<EmitterKind>(payload_.index());
}

std::string ElectronState::describe() const
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << to_string(kind());
    if (auto const* g = get<GaussianPure>())
    {
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                os << ' ' << g->variance(i, j);
    }
    else if (auto const* s = get<GaussianSchell>())
    {
        os << ' ' << s->sigma_x << ' ' << s->xi;
    }
    else if (auto const* p = get<PinemComb>())
    {
        os << ' ' << p->coupling.real() << ' ' << p->coupling.imag() << ' ' << p->omega_mod << ' '
           << p->carrier_speed << ' ' << p->envelope_sigma << ' ' << p->transverse_sigma << ' '
           << p->n_max;
        for (double phi : p->phases)
            os << ' ' << phi;
    }
    else if (auto const* e = get<EmpiricalDensity>())
    {
        os << ' ' << e->grid.start << ' ' << e->grid.step << ' ' << e->grid.count;
        for (double v : e->density)
            os << ' ' << v;
    }
    return os.str();
}

ElectronState load_empirical_density(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::IoError, "cannot read density file " + path.string());
    std::vector<double> x, p;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        double a = 0.0, b = 0.0;
        if (!(ls >> a))
            continue;
        std::string rest;
        if (!(ls >> b) || (ls >> rest))
            fail(ErrorCode::FormatError,
                 path.string() + ":" + std::to_string(line_no) + ": expected two columns");
        x.push_back(a * 1e-9);
        p.push_back(b * 1e9);
    }
    if (x.size() < 2)
        fail(ErrorCode::FormatError, path.string() + ": need at least two samples");
    double const step = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i)
    {
        if (std::abs((x[i] - x[i - 1]) - step) > 1e-6 * std::abs(step))
            fail(ErrorCode::FormatError, path.string() + ": positions must be uniformly spaced");
    }
    for (double v : p)
    {
        if (v < 0.0)
            fail(ErrorCode::FormatError, path.string() + ": negative density sample");
    }
    return ElectronState::empirical({x.front(), step, x.size()}, std::move(p));
}

ElectronState make_pinem(complex coupling,
                         double omega_mod,
                         double carrier_speed,
                         double envelope_sigma,
                         PhaseRule const& rule,
                         double transverse_sigma,
                         int n_cap)
{
    if (!(omega_mod > 0.0))
        fail(ErrorCode::InvalidArgument, "PINEM modulation frequency must be positive");
    double const x = 2.0 * std::abs(coupling);
    auto bessel = [x](int n) {
        double const j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), x);
        return (n < 0 && (n % 2 != 0)) ? -j : j;
    };

    // smallest n_max with truncated weight below 1e-8
    int n_max = 0;
    double weight = bessel(0) * bessel(0);
    while (1.0 - weight >= 1e-8)
    {
        ++n_max;
        if (n_max > n_cap)
        {
            fail(ErrorCode::TruncationFailure,
                 "PINEM comb with |g| = " + std::to_string(std::abs(coupling))
                     + " needs more than " + std::to_string(n_cap) + " sidebands");
        }
        double const j = bessel(n_max);
        weight += 2.0 * j * j;
    }

    PinemComb comb;
    comb.coupling = coupling;
    comb.omega_mod = omega_mod;
    comb.carrier_speed = carrier_speed;
    comb.envelope_sigma = envelope_sigma;
    comb.transverse_sigma = transverse_sigma;
    comb.n_max = n_max;

    int half = 0;
    if (rule.kind == PhaseRule::Kind::Explicit)
    {
        if (rule.explicit_phases.size() % 2 != 1)
            fail(ErrorCode::InvalidArgument, "explicit sideband phases need an odd count");
        half = static_cast<int>(rule.explicit_phases.size() / 2);
        if (half < n_max)
            fail(ErrorCode::InvalidArgument,
                 "explicit phases cover |n| <= " + std::to_string(half) + " but the comb needs "
                     + std::to_string(n_max));
    }
    double const arg = std::arg(coupling);
    for (int n = -n_max; n <= n_max; ++n)
    {
        double const phi = rule.kind == PhaseRule::Kind::Quadratic
                               ? rule.b * n * n
                               : rule.explicit_phases[static_cast<std::size_t>(n + half)];
        comb.phases.push_back(phi);
        comb.amplitudes.push_back(bessel(n) * std::polar(1.0, n * arg + phi));
    }
    return ElectronState::pinem(std::move(comb));
}

//---------------------------------------------------------------------------//

double projected_variance(ElectronState const& state, Vec3 const& direction)
{
    check_direction(direction);
    auto const* g = state.get<GaussianPure>();
    if (!g)
        fail(ErrorCode::UnsupportedVariant,
             "projected_variance needs a Gaussian state, got " + std::string(to_string(state.kind())));
    return direction.dot(g->variance * direction);
}

ProjectedMoments projected_moments(ElectronState const& state, Vec3 const& direction)
{
    check_direction(direction);
    switch (state.kind())
    {
        case EmitterKind::GaussianPure:
            return {0.0, projected_variance(state, direction)};
        case EmitterKind::GaussianSchell: {
            double const s = state.get<GaussianSchell>()->sigma_x;
            return {0.0, s * s};
        }
        case EmitterKind::PinemComb: {
            auto const& comb = *state.get<PinemComb>();
            auto const ax = pinem_axes(comb, direction);
            double const k = comb.wavenumber();
            double const s2 = comb.envelope_sigma * comb.envelope_sigma;
            complex m1{}, m2{};
            for (int m = -2 * comb.n_max; m <= 2 * comb.n_max; ++m)
            {
                double const e = std::exp(-0.5 * m * m * k * k * s2);
                m1 += comb.beat(m) * complex(0.0, m * k * s2) * e;
                m2 += comb.beat(m) * (s2 - m * m * k * k * s2 * s2) * e;
            }
            double const mean_z = m1.real() / comb.norm;
            double const var_z = m2.real() / comb.norm - mean_z * mean_z;
            return {ax.c * mean_z, ax.c * ax.c * var_z + ax.s2};
        }
        case EmitterKind::EmpiricalDensity: {
            auto const& e = *state.get<EmpiricalDensity>();
            std::vector<double> w1(e.density.size()), w2(e.density.size());
            for (std::size_t i = 0; i < e.density.size(); ++i)
                w1[i] = e.grid.value(i) * e.density[i];
            double const mean = trapezoid(w1, e.grid.step);
            for (std::size_t i = 0; i < e.density.size(); ++i)
            {
                double const d = e.grid.value(i) - mean;
                w2[i] = d * d * e.density[i];
            }
            return {mean, trapezoid(w2, e.grid.step)};
        }
    }
    return {};
}

complex momentum_coherence(ElectronState const& state, double delta_q, Vec3 const& direction)
{
    check_direction(direction);
    switch (state.kind())
    {
        case EmitterKind::GaussianPure: {
            double const v = projected_variance(state, direction);
            return std::exp(-0.5 * delta_q * delta_q * v);
        }
        case EmitterKind::GaussianSchell: {
            double const s = state.get<GaussianSchell>()->sigma_x;
            return std::exp(-0.5 * delta_q * delta_q * s * s);
        }
        case EmitterKind::PinemComb: {
            auto const& comb = *state.get<PinemComb>();
            auto const ax = pinem_axes(comb, direction);
            double const k = comb.wavenumber();
            double const s2 = comb.envelope_sigma * comb.envelope_sigma;
            double const dz = delta_q * ax.c;
            complex sum{};
            for (int m = -2 * comb.n_max; m <= 2 * comb.n_max; ++m)
            {
                double const a = dz + m * k;
                sum += comb.beat(m) * std::exp(-0.5 * a * a * s2);
            }
            return sum * std::exp(-0.5 * delta_q * delta_q * ax.s2) / comb.norm;
        }
        case EmitterKind::EmpiricalDensity: {
            auto const& e = *state.get<EmpiricalDensity>();
            if (std::abs(delta_q) * e.grid.step > constants::pi)
                fail(ErrorCode::GridTooCoarse,
                     "empirical density grid cannot resolve the requested wavenumber");
            complex sum{};
            std::size_t const n = e.density.size();
            for (std::size_t i = 0; i < n; ++i)
            {
                double const w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
                sum += w * e.density[i] * std::polar(1.0, delta_q * e.grid.value(i));
            }
            return sum * e.grid.step;
        }
    }
    return {};
}

std::vector<double> projected_density(ElectronState const& state,
                                      Vec3 const& direction,
                                      UniformGrid const& grid)
{
    check_direction(direction);
    auto const mom = projected_moments(state, direction);
    double const sd = std::sqrt(mom.variance);
    if (grid.count < min_density_samples)
        fail(ErrorCode::GridTooNarrow,
             "density grid needs at least " + std::to_string(min_density_samples) + " samples");
    if (grid.value(0) > mom.mean - 4.0 * sd || grid.back() < mom.mean + 4.0 * sd)
        fail(ErrorCode::GridTooNarrow, "density grid must cover +-4 standard deviations");

    std::vector<double> out(grid.count);
    switch (state.kind())
    {
        case EmitterKind::GaussianPure:
        case EmitterKind::GaussianSchell:
            for (std::size_t i = 0; i < grid.count; ++i)
                out[i] = gauss(grid.value(i), mom.variance);
            break;
        case EmitterKind::PinemComb: {
            auto const& comb = *state.get<PinemComb>();
            auto const ax = pinem_axes(comb, direction);
            double const k = comb.wavenumber();
            double const sz2 = comb.envelope_sigma * comb.envelope_sigma;
            double const v = ax.c * ax.c * sz2 + ax.s2;
            double const tau2 = sz2 * ax.s2 / v;
            for (std::size_t i = 0; i < grid.count; ++i)
            {
                double const u = grid.value(i);
                complex sum{};
                for (int m = -2 * comb.n_max; m <= 2 * comb.n_max; ++m)
                {
                    sum += comb.beat(m)
                           * std::exp(complex(-0.5 * m * m * k * k * tau2,
                                              m * k * ax.c * sz2 * u / v));
                }
                out[i] = std::max(0.0, gauss(u, v) * sum.real() / comb.norm);
            }
            break;
        }
        case EmitterKind::EmpiricalDensity: {
            auto const& e = *state.get<EmpiricalDensity>();
            if (grid == e.grid)
                return e.density;
            for (std::size_t i = 0; i < grid.count; ++i)
            {
                double const pos = (grid.value(i) - e.grid.start) / e.grid.step;
                if (pos < 0.0 || pos > static_cast<double>(e.grid.count - 1))
                {
                    out[i] = 0.0;
                    continue;
                }
                auto const j = std::min(static_cast<std::size_t>(pos), e.grid.count - 2);
                double const f = pos - static_cast<double>(j);
                out[i] = (1.0 - f) * e.density[j] + f * e.density[j + 1];
            }
            break;
        }
    }
    return out;
}

//---------------------------------------------------------------------------//

double energy_size_map(double radius, ParticleKinematics const& kin)
{
    if (!(radius > 0.0))
        fail(ErrorCode::NonPositiveRadius, "wavepacket radius must be positive");
    if (std::isinf(radius))
        return 0.0;
    return constants::hbar * kin.speed() / radius / constants::elementary_charge;
}

double size_from_energy_spread(double energy_spread_ev, ParticleKinematics const& kin)
{
    if (!(energy_spread_ev > 0.0))
        fail(ErrorCode::InvalidArgument, "energy spread must be positive");
    return constants::hbar * kin.speed() / (energy_spread_ev * constants::elementary_charge);
}

SchellUncertainty schell_uncertainties(double sigma_x, double xi)
{
    if (!(sigma_x > 0.0 && xi > 0.0))
        fail(ErrorCode::InvalidArgument, "Gaussian-Schell widths must be positive");
    double const a = 1.0 / (4.0 * sigma_x * sigma_x);
    double const b = std::isinf(xi) ? 0.0 : 1.0 / (xi * xi);
    return {constants::hbar * std::sqrt(a + b), constants::hbar / (2.0 * sigma_x)};
}
} // namespace cqcl
