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
// Acceptance criteria for the cqcl engine. Prints one PASS/FAIL line per
// criterion; `--criterion N` runs a single one. Exit status is 0 only when
// every selected criterion passes.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"
#include "cqcl/matrix_io.hpp"
#include "cqcl/oracle.hpp"
#include "cqcl/reconstruction.hpp"
#include "cqcl/scenario.hpp"
#include "fixtures.hpp"

using namespace cqcl;
using namespace cqcl::test;

namespace
{
struct Verdict
{
    bool pass = false;
    std::string detail;
};

using Criterion = std::function<Verdict()>;

std::string num(double v, int digits = 6)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

//---------------------------------------------------------------------------//
Verdict kinematics()
{
    double const beta = mev_electron().beta;
    return {std::abs(beta - 0.9411) <= 1e-4, "beta(1 MeV) = " + num(beta, 10) + ", target 0.9411 +- 0.0001"};
}

Verdict dispersion()
{
    // Malitson silica at 550 nm, 50-digit evaluation
    constexpr double reference = 1.45991088647;
    double const n = fused_silica().refractive_index(550e-9);
    bool const ok = std::abs(n - 1.4599) <= 5e-4 && std::abs(n - reference) <= 5e-4;
    return {ok, "n(550 nm) = " + num(n, 12) + ", reference " + num(reference, 12) + ", |diff| = "
                    + num(std::abs(n - reference), 3) + ", target 1.4599 +- 0.0005"};
}

Verdict energy_size()
{
    auto const kin = mev_electron();
    struct Pair
    {
        double radius;
        double energy_ev;
    };
    Pair const pairs[] = {{50e-9, 3.72}, {1e-6, 0.19}};
    bool ok = true;
    std::string detail;
    for (auto const& p : pairs)
    {
        double const e = energy_size_map(p.radius, kin);
        double const r = size_from_energy_spread(p.energy_ev, kin);
        double const de = std::abs(e - p.energy_ev) / p.energy_ev;
        double const dr = std::abs(r - p.radius) / p.radius;
        bool const pair_ok = de <= 0.02 && dr <= 0.02;
        ok = ok && pair_ok;
        detail += num(p.radius * 1e9, 4) + " nm -> " + num(e, 5) + " eV (" + num(100 * de, 3) + "% off "
                  + num(p.energy_ev, 3) + "), " + num(p.energy_ev, 3) + " eV -> " + num(r * 1e9, 5) + " nm ("
                  + num(100 * dr, 3) + "% off)" + (pair_ok ? "; " : " [out of 2%]; ");
    }
    return {ok, detail + "tolerance 2%"};
}

Verdict reconstruction_round_trip()
{
    double const small = simulate(load_preset("fig3d")).report.number("size_estimate_nm");
    double const large = simulate(load_preset("fig3e")).report.number("size_estimate_nm");
    bool const ok = small >= 216.0 && small <= 343.0 && std::abs(large - 1006.0) <= 0.1 * 1006.0;
    return {ok, "254 nm -> " + num(small, 5) + " nm (window [216, 343]); 1016 nm -> " + num(large, 5)
                    + " nm (target 1006 +- 10%)"};
}

Verdict diagonal_invariance()
{
    auto const a = power_spectrum(simulate(load_preset("fig3d")).pdm);
    auto const b = power_spectrum(simulate(load_preset("fig3e")).pdm);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i] > 0.0)
            worst = std::max(worst, std::abs(a[i] - b[i]) / a[i]);
        else if (b[i] != 0.0)
            worst = std::max(worst, 1.0);
    }
    return {a.size() == b.size() && worst <= 1e-6, "max relative diagonal difference " + num(worst, 3) + " (<= 1e-6)"};
}

Verdict uncertainty()
{
    struct Band
    {
        double lo, hi;
    };
    Band const bands[] = {{300e-9, 1000e-9}, {400e-9, 700e-9}, {475e-9, 625e-9}};
    double min_ratio = 1e300;
    double worst_qualifying = 0.0;
    int qualifying = 0;
    int total = 0;
    for (auto const& band : bands)
    {
        Setup const s(512, band.lo, band.hi);
        for (int k = 0; k < 9; ++k)
        {
            double const sigma = 100e-9 * std::pow(20.0, k / 8.0);
            auto const state = ElectronState::spherical_gaussian(sigma);
            auto const pdm = s.pdm(state);
            auto const prof = temporal_autocorrelation(pdm, {4, 150e-15});
            double const v = effective_group_velocity(pdm, s.model);
            double const ratio = uncertainty_check(shock_position_width(prof, v), constants::hbar / (2 * sigma));
            min_ratio = std::min(min_ratio, ratio);
            ++total;
            double const coherence_width = s.v_g0() / sigma;
            if (spectral_rms_width(pdm) >= 5.0 * coherence_width)
            {
                ++qualifying;
                worst_qualifying = std::max(worst_qualifying, std::abs(ratio - 1.0));
            }
        }
    }
    bool const ok = min_ratio >= 1.0 - 1e-6 && qualifying > 0 && worst_qualifying <= 0.05;
    return {ok, std::to_string(total) + " runs, min ratio " + num(min_ratio, 7) + " (>= 1 - 1e-6); "
                    + std::to_string(qualifying) + " broadband minimum-uncertainty runs, max |ratio - 1| = "
                    + num(worst_qualifying, 3) + " (<= 0.05)"};
}

Verdict coherence_ordering()
{
    auto const coh = simulate(load_preset("fig2-coherent")).report;
    auto const inc = simulate(load_preset("fig2-incoherent")).report;
    double const gc = coh.number("g1_fwhm_fs"), pc = coh.number("envelope_fwhm_fs");
    double const gi = inc.number("g1_fwhm_fs"), pi = inc.number("envelope_fwhm_fs");
    bool const ok = gc > pc && gi < pi;
    return {ok, "3.72 eV: |g1| " + num(gc, 4) + " fs vs P " + num(pc, 4) + " fs; 0.19 eV: |g1| " + num(gi, 4)
                    + " fs vs P " + num(pi, 4) + " fs (FWHM)"};
}

Verdict classical_envelope()
{
    bool ok = true;
    std::string detail;
    for (auto profile : {AcceptanceProfile::RaisedCosine, AcceptanceProfile::Rect})
    {
        Setup const s(256, 400e-9, 700e-9, profile);
        auto const prof = temporal_autocorrelation(s.pdm(ElectronState::point()), {16, 30e-15});
        double const w = envelope_stats(prof).fwhm;
        ok = ok && w >= 0.7e-15 && w <= 2.8e-15;
        detail += std::string(to_string(profile)) + " FWHM " + num(w * 1e15, 4) + " fs; ";
    }
    return {ok, detail + "target 1.4 fs within a factor of 2"};
}

Verdict pinem_fringes()
{
    auto const config = load_preset("fig4");
    auto const res = simulate(config);
    double const omega_mod = constants::two_pi * config.emitter.modulation_frequency;
    double const step = res.pdm.omega.step;
    if (!res.report.find("fringe_period"))
        return {false, "no fringes detected (status " + res.report.get("coherence_status") + ")"};
    double const period = res.report.number("fringe_period");
    bool const ok = std::abs(period - omega_mod) <= step;
    return {ok, "fringe period " + num(period, 7) + " rad/s vs Omega " + num(omega_mod, 7) + " rad/s, |diff| "
                    + num(std::abs(period - omega_mod), 3) + " <= grid step " + num(step, 3)};
}

Verdict structural()
{
    std::vector<PhotonDensityMatrix> produced;
    for (auto const& name : preset_names())
        produced.push_back(simulate(load_preset(name)).pdm);
    {
        Setup const s(512);
        produced.push_back(s.pdm(ElectronState::point()));
        produced.push_back(s.pdm(ElectronState::axial_gaussian(600e-9, 150e-9)));
        produced.push_back(s.pdm(ElectronState::gaussian_schell(400e-9, 40e-9)));
    }
    double herm = 0.0, psd = 0.0;
    for (auto const& pdm : produced)
    {
        auto const r = check_hermitian_psd(pdm.m);
        herm = std::max(herm, r.hermitian_error);
        psd = std::min(psd, r.min_eigenvalue / r.max_eigenvalue);
    }

    // fast transform vs quadrature at N = 128
    Setup const s(128);
    auto pdm = s.pdm(ElectronState::spherical_gaussian(254e-9));
    double transform = 0.0, parseval = 0.0;
    for (int pass = 0; pass < 2; ++pass)
    {
        if (pass == 1)
            pdm.m = random_psd(128, 2024);
        auto const prof = temporal_autocorrelation(pdm, {2, 30e-15});
        std::vector<double> t(prof.time.count);
        for (std::size_t k = 0; k < t.size(); ++k)
            t[k] = prof.time.value(k);
        auto const ref = oracle::quadrature_temporal_matrix(pdm, t);
        transform = std::max(transform, (prof.c - ref).norm() / ref.norm());

        auto const full = temporal_autocorrelation(pdm, {2, {}});
        double const e = envelope_stats(full).energy;
        double const expect = constants::two_pi * pdm.omega.step * pdm.m.trace().real();
        parseval = std::max(parseval, std::abs(e - expect) / expect);
    }

    // Gaussian fast path vs analytic closed form, silica linearized at 550 nm
    auto const lin = DispersionModel::constant(1.48310727666);
    Setup const l(lin, Setup::spec(128, 400e-9, 700e-9, AcceptanceProfile::RaisedCosine));
    auto const g = l.pdm(ElectronState::spherical_gaussian(254e-9));
    oracle::AnalyticGaussianCase c{254e-9, constants::c_light / 1.48310727666, g.omega.start, g.omega.back(),
                                   AcceptanceProfile::RaisedCosine};
    double analytic = 0.0;
    for (Eigen::Index i = 0; i < g.m.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < g.m.cols(); ++j)
        {
            double const di = g.m(i, i).real(), dj = g.m(j, j).real();
            if (!(di > 0.0 && dj > 0.0))
                continue;
            auto const ref = oracle::analytic_coherence(c, g.omega.value(static_cast<std::size_t>(i)),
                                                        g.omega.value(static_cast<std::size_t>(j)));
            analytic = std::max(analytic, std::abs(g.m(i, j) / std::sqrt(di * dj) - ref) / std::abs(ref));
        }
    }

    bool const ok = herm <= 1e-12 && psd >= -1e-10 && transform <= 1e-6 && analytic <= 1e-8 && parseval <= 1e-8;
    return {ok, std::to_string(produced.size()) + " matrices: Hermitian error " + num(herm, 3) + ", min eig/max "
                    + num(psd, 3) + "; transform vs quadrature " + num(transform, 3) + "; analytic "
                    + num(analytic, 3) + "; Parseval " + num(parseval, 3)};
}

Verdict determinism()
{
    auto const base = std::filesystem::temp_directory_path() / "cqcl-acceptance-determinism";
    std::filesystem::remove_all(base);
    std::size_t compared = 0;
    std::vector<std::string> differing;
    for (auto const& name : preset_names())
    {
        auto const a = run_scenario(load_preset(name), {base / "a", {}, {}});
        auto const b = run_scenario(load_preset(name), {base / "b", {}, {}});
        auto files_a = a.files, files_b = b.files;
        files_a.push_back(a.manifest);
        files_b.push_back(b.manifest);
        for (std::size_t i = 0; i < files_a.size(); ++i)
        {
            ++compared;
            if (read_file(files_a[i]) != read_file(files_b[i]))
                differing.push_back(files_a[i].filename().string());
        }
    }
    std::filesystem::remove_all(base);
    std::string detail = std::to_string(compared) + " files compared across repeated preset runs";
    for (auto const& d : differing)
        detail += "; differs: " + d;
    return {differing.empty() && compared > 0, detail};
}
} // namespace

int main(int argc, char** argv)
{
    std::vector<std::pair<char const*, Criterion>> const criteria = {
        {"kinematics", kinematics},
        {"dispersion", dispersion},
        {"energy-size pairing", energy_size},
        {"reconstruction round trip", reconstruction_round_trip},
        {"diagonal invariance", diagonal_invariance},
        {"uncertainty principle", uncertainty},
        {"coherence ordering", coherence_ordering},
        {"classical-limit envelope", classical_envelope},
        {"PINEM fringes", pinem_fringes},
        {"structural properties", structural},
        {"determinism", determinism},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i)
    {
        std::string const arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc)
        {
            only = std::atoi(argv[++i]);
        }
        else
        {
            std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size()))
    {
        std::cerr << "criterion must be in 1.." << criteria.size() << "\n";
        return 2;
    }

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k)
    {
        if (only != 0 && static_cast<int>(k + 1) != only)
            continue;
        Verdict v;
        try
        {
            v = criteria[k].second();
        }
        catch (std::exception const& e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass)
            ++failed;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << k + 1 << ". " << criteria[k].first
                  << ": " << v.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
