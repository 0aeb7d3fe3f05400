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
#include <cmath>
#include <vector>

#include <doctest.h>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"
#include "cqcl/radiation.hpp"
#include "fixtures.hpp"

using namespace cqcl;
using namespace cqcl::test;

namespace
{
ElectronState demo_pinem(ParticleKinematics const& kin)
{
    return make_pinem(1.5, constants::two_pi * 200e12, kin.speed(), 2 * um, PhaseRule::quadratic(0.3), 20 * nm);
}

void check_density_matrix(PhotonDensityMatrix const& pdm)
{
    auto const r = check_hermitian_psd(pdm.m);
    CHECK(r.hermitian_error <= 1e-12);
    CHECK(r.min_eigenvalue >= -1e-10 * r.max_eigenvalue);
    for (Eigen::Index i = 0; i < pdm.m.rows(); ++i)
    {
        CHECK(pdm.m(i, i).imag() == 0.0);
        CHECK(pdm.m(i, i).real() >= 0.0);
    }
}
} // namespace

TEST_CASE("detection window")
{
    Setup const s;
    auto const& w = s.win;
    auto const& t = w.acceptance();
    double peak = 0.0;
    for (auto v : t)
    {
        CHECK(std::abs(v) <= 1.0);
        peak = std::max(peak, std::abs(v));
    }
    CHECK(peak == 1.0);
    CHECK(std::abs(t.front()) < 1e-3 * peak);
    CHECK(std::abs(t.back()) < 1e-3 * peak);
    CHECK(w.omega_0() == doctest::Approx(constants::omega_from_wavelength(550 * nm)));

    double const lo = constants::omega_from_wavelength(700 * nm);
    double const hi = constants::omega_from_wavelength(400 * nm);
    for (auto p : {AcceptanceProfile::RaisedCosine, AcceptanceProfile::Gaussian})
    {
        CHECK(acceptance_value(p, 0.5, lo, hi, lo) == doctest::Approx(0.5));
        CHECK(acceptance_value(p, 0.5, lo, hi, hi) == doctest::Approx(0.5));
        CHECK(acceptance_value(p, 0.5, lo, hi, 0.5 * (lo + hi)) == 1.0);
    }
    CHECK(acceptance_value(AcceptanceProfile::Rect, 0.5, lo, hi, 0.99 * lo) == 0.0);
    CHECK(acceptance_from_string("gaussian") == AcceptanceProfile::Gaussian);
    CQCL_CHECK_THROWS_CODE(acceptance_from_string("tophat"), ErrorCode::ConfigError);

    auto spec = Setup::spec(100, 400 * nm, 700 * nm, AcceptanceProfile::RaisedCosine);
    CQCL_CHECK_THROWS_CODE(DetectionWindow::build(spec, s.model, s.kin), ErrorCode::InvalidArgument);
    spec.n = 32;
    CQCL_CHECK_THROWS_CODE(DetectionWindow::build(spec, s.model, s.kin), ErrorCode::InvalidArgument);

    std::vector<std::complex<double>> flat(64, 1.0);
    CQCL_CHECK_THROWS_CODE(DetectionWindow::custom(w.grid(), flat, w.omega_0(), w.geometry()),
                           ErrorCode::InvalidArgument);
}

TEST_CASE("every produced density matrix is Hermitian PSD with a real diagonal")
{
    auto const kin = mev_electron();
    for (std::size_t n : {64u, 256u, 512u})
    {
        Setup const s(n);
        CAPTURE(n);
        check_density_matrix(s.pdm(ElectronState::point()));
        check_density_matrix(s.pdm(ElectronState::spherical_gaussian(254 * nm)));
        check_density_matrix(s.pdm(ElectronState::axial_gaussian(500 * nm, 50 * nm)));
        check_density_matrix(s.pdm(ElectronState::gaussian_schell(300 * nm, 50 * nm)));
        if (n >= 128)
            check_density_matrix(s.pdm(demo_pinem(kin)));
    }
}

TEST_CASE("point emitter gives a rank-one, fully coherent matrix")
{
    Setup const s(128);
    auto const pdm = s.pdm(ElectronState::point());
    auto const r = check_hermitian_psd(pdm.m);
    auto const a = emission_amplitudes(s.kin, s.model, s.win).a;
    for (Eigen::Index i = 0; i < pdm.m.rows(); ++i)
        for (Eigen::Index j = 0; j < pdm.m.cols(); ++j)
            CHECK(std::abs(pdm.m(i, j) - a[i] * std::conj(a[j])) <= 1e-12 * r.max_eigenvalue);
}

TEST_CASE("diagonal is the emitter-independent power spectrum")
{
    Setup const s;
    auto const ref = power_spectrum(s.pdm(ElectronState::spherical_gaussian(254 * nm)));
    auto const amps = emission_amplitudes(s.kin, s.model, s.win);
    for (auto const& state : {ElectronState::spherical_gaussian(1016 * nm), ElectronState::point(),
                              ElectronState::gaussian_schell(200 * nm, 30 * nm),
                              ElectronState::axial_gaussian(400 * nm, 10 * nm)})
    {
        auto const d = power_spectrum(s.pdm(state));
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            CHECK(std::abs(d[i] - ref[i]) <= 1e-6 * ref[i]);
            CHECK(d[i] == doctest::Approx(std::norm(amps.a[i])).epsilon(1e-14));
        }
    }

    SUBCASE("diagonal prefactor is U0 / 2 pi |T|^2")
    {
        std::size_t const i = s.win.size() / 2;
        double const w = s.win.grid().value(i);
        double const n = s.model.index_at_omega(w);
        double const sin2 = 1.0 - 1.0 / std::pow(s.kin.beta * n, 2);
        double const u0 = constants::hbar * w * constants::fine_structure * s.kin.beta * sin2;
        CHECK(ref[i] == doctest::Approx(u0 / constants::two_pi * std::norm(s.win.acceptance()[i])));
    }
    SUBCASE("acceptance scaling is quadratic")
    {
        auto const state = ElectronState::spherical_gaussian(254 * nm);
        for (double f : {0.5, 2.0, 0.0})
        {
            auto const d = power_spectrum(spectral_autocorrelation(state, s.kin, s.model, s.win.scaled(f)));
            for (std::size_t i = 0; i < d.size(); ++i)
                CHECK(d[i] == doctest::Approx(f * f * ref[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("states with the same projected density give the same matrix")
{
    Setup const s;
    auto const a = s.pdm(ElectronState::spherical_gaussian(300 * nm));
    auto const b = s.pdm(ElectronState::gaussian_schell(300 * nm, 20 * nm));
    CHECK(max_rel(b.m, a.m) < 1e-14);
    // different internal phases of a PINEM comb, same density
    auto const p1 = make_pinem(1.5, constants::two_pi * 200e12, s.kin.speed(), 2 * um, PhaseRule::quadratic(0.3));
    std::vector<double> phases;
    int const n_max = p1.get<PinemComb>()->n_max;
    for (int n = -n_max; n <= n_max; ++n)
        phases.push_back(0.3 * n * n - 2.0);
    auto const p2 = make_pinem(1.5, constants::two_pi * 200e12, s.kin.speed(), 2 * um, PhaseRule::explicit_list(phases));
    CHECK(max_rel(s.pdm(p2).m, s.pdm(p1).m) < 1e-12);
}

TEST_CASE("off-diagonal coherence of a 254 nm Gaussian")
{
    Setup const s;
    auto const pdm = s.pdm(ElectronState::spherical_gaussian(254 * nm));
    double const expected = s.v_g0() / (254 * nm);
    CHECK(expected == doctest::Approx(7.9e14).epsilon(0.01));
    // normalized element at a separation of one expected width
    auto const& g = pdm.omega;
    auto const i0 = static_cast<Eigen::Index>((s.win.omega_0() - g.start) / g.step);
    auto const k = static_cast<Eigen::Index>(std::lround(0.5 * expected / g.step));
    double const sep = 2.0 * static_cast<double>(k) * g.step;
    double const v = std::abs(pdm.m(i0 + k, i0 - k))
                     / std::sqrt(pdm.m(i0 + k, i0 + k).real() * pdm.m(i0 - k, i0 - k).real());
    CHECK(v == doctest::Approx(std::exp(-0.5 * std::pow(sep / expected, 2))).epsilon(0.02));
}

TEST_CASE("monotone decoherence")
{
    Setup const s(128);
    Eigen::MatrixXd prev = s.pdm(ElectronState::point()).m.cwiseAbs();
    for (double size = 20 * nm; size <= 3 * um; size *= 1.6)
    {
        Eigen::MatrixXd const cur = s.pdm(ElectronState::spherical_gaussian(size)).m.cwiseAbs();
        CAPTURE(size);
        CHECK((cur.array() <= prev.array() * (1 + 1e-12) + 1e-300).all());
        prev = cur;
    }
    // anisotropic growth along one axis
    Eigen::MatrixXd p2 = s.pdm(ElectronState::axial_gaussian(100 * nm, 100 * nm)).m.cwiseAbs();
    Eigen::MatrixXd q2 = s.pdm(ElectronState::axial_gaussian(400 * nm, 100 * nm)).m.cwiseAbs();
    CHECK((q2.array() <= p2.array() * (1 + 1e-12)).all());
}

TEST_CASE("threshold and grid errors")
{
    Setup const s;
    auto const slow = kinematics_from_kinetic(1e5, constants::electron_rest_energy_ev);
    try
    {
        emission_amplitudes(slow, s.model, s.win);
        FAIL("expected BelowThreshold");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::BelowThreshold);
        CHECK(std::string(e.what()).find("nm") != std::string::npos);
    }
    Setup const coarse(64);
    CQCL_CHECK_THROWS_CODE(coarse.pdm(ElectronState::spherical_gaussian(20 * um)), ErrorCode::GridTooCoarse);
    CHECK_NOTHROW(coarse.pdm(ElectronState::spherical_gaussian(2 * um)));
}

TEST_CASE("descriptor hash and metadata")
{
    Setup const s;
    auto const g = ElectronState::spherical_gaussian(254 * nm);
    auto const pdm = s.pdm(g);
    CHECK(pdm.meta.emitter_hash.size() == 16);
    CHECK(pdm.meta.emitter_hash == emitter_hash(ElectronState::spherical_gaussian(254 * nm)));
    CHECK(pdm.meta.emitter_hash != emitter_hash(ElectronState::spherical_gaussian(253 * nm)));
    CHECK(pdm.meta.emitter_kind == "gaussian");
    CHECK(pdm.meta.material == "fused_silica");
    CHECK(pdm.meta.index_0 == doctest::Approx(1.45991088647).epsilon(1e-10));
    CHECK(pdm.meta.group_index_0 == doctest::Approx(1.48310727666).epsilon(1e-10));
    CHECK(pdm.meta.theta_c * 180 / constants::pi == doctest::Approx(43.2928).epsilon(1e-5));
}

TEST_CASE("spectral summaries")
{
    Setup const s;
    auto const pdm = s.pdm(ElectronState::point());
    double const v = effective_group_velocity(pdm, s.model);
    CHECK(v > constants::c_light / s.model.group_index(400 * nm));
    CHECK(v < constants::c_light / s.model.group_index(700 * nm));
    double const rms = spectral_rms_width(pdm);
    CHECK(rms > 0.1 * (pdm.omega.back() - pdm.omega.start));
    CHECK(rms < 0.5 * (pdm.omega.back() - pdm.omega.start));

    auto zero = pdm;
    zero.m.setZero();
    CQCL_CHECK_THROWS_CODE(spectral_rms_width(zero), ErrorCode::DegenerateEnvelope);
}

TEST_CASE("noise injection")
{
    Setup const s(64);
    auto const pdm = s.pdm(ElectronState::spherical_gaussian(254 * nm));
    auto const a = add_noise(pdm, 1e-3, 42);
    auto const b = add_noise(pdm, 1e-3, 42);
    auto const c = add_noise(pdm, 1e-3, 43);
    CHECK(a.m == b.m);
    CHECK(a.m != c.m);
    CHECK(check_hermitian_psd(a.m).hermitian_error == 0.0);
    double const dev = (a.m - pdm.m).cwiseAbs().maxCoeff() / pdm.m.cwiseAbs().maxCoeff();
    CHECK(dev > 1e-5);
    CHECK(dev < 1e-2);
    CHECK(add_noise(pdm, 0.0, 1).m == pdm.m);
    CQCL_CHECK_THROWS_CODE(add_noise(pdm, -1.0, 1), ErrorCode::InvalidArgument);
}
