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
#include "cqcl/oracle.hpp"
#include "fixtures.hpp"

using namespace cqcl;
using namespace cqcl::test;

namespace
{
// Silica linearized about 550 nm: q = n_g(550) w / c has exactly the group
// velocity of silica at band centre.
DispersionModel linearized_silica()
{
    return DispersionModel::constant(1.48310727666, 1e-9, 1.0, "linearized_silica");
}
} // namespace

TEST_CASE("analytic coherence")
{
    oracle::AnalyticGaussianCase c;
    c.size = 254 * nm;
    c.v_g = constants::c_light / 1.48310727666;
    c.omega_lo = 2.69e15;
    c.omega_hi = 4.71e15;
    CHECK(oracle::analytic_coherence(c, 3.4e15, 3.4e15) == std::complex<double>(1.0, 0.0));
    double const one = c.v_g / c.size;
    CHECK(std::abs(oracle::analytic_coherence(c, 3.4e15 + one, 3.4e15) - std::exp(-0.5)) < 1e-15);
    CHECK(oracle::analytic_coherence(c, 3.4e15 - one, 3.4e15) == oracle::analytic_coherence(c, 3.4e15 + one, 3.4e15));
}

TEST_CASE("fast density matrix matches the analytic Gaussian")
{
    auto const model = linearized_silica();
    for (std::size_t n : {64u, 256u})
    {
        Setup const s(model, Setup::spec(n, 400 * nm, 700 * nm, AcceptanceProfile::RaisedCosine));
        auto const pdm = s.pdm(ElectronState::spherical_gaussian(254 * nm));
        oracle::AnalyticGaussianCase c;
        c.size = 254 * nm;
        c.v_g = constants::c_light / 1.48310727666;
        c.omega_lo = s.win.grid().start;
        c.omega_hi = s.win.grid().back();
        double worst = 0.0;
        for (Eigen::Index i = 0; i < pdm.m.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < pdm.m.cols(); ++j)
            {
                double const di = pdm.m(i, i).real(), dj = pdm.m(j, j).real();
                if (!(di > 0.0 && dj > 0.0))
                    continue;
                auto const fast = pdm.m(i, j) / std::sqrt(di * dj);
                auto const ref = oracle::analytic_coherence(c, pdm.omega.value(static_cast<std::size_t>(i)),
                                                            pdm.omega.value(static_cast<std::size_t>(j)));
                worst = std::max(worst, std::abs(fast - ref) / std::abs(ref));
            }
        }
        CAPTURE(n);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("quadrature oracle")
{
    Setup const s(64);
    auto pdm = s.pdm(ElectronState::point());

    SUBCASE("zero matrix gives zero")
    {
        pdm.m.setZero();
        CHECK(oracle::quadrature_temporal(pdm, 1 * fs, -2 * fs) == std::complex<double>(0.0, 0.0));
    }
    SUBCASE("diagonal matrix is stationary")
    {
        Eigen::MatrixXcd d = pdm.m.diagonal().asDiagonal();
        pdm.m = d;
        auto const a = oracle::quadrature_temporal(pdm, 3 * fs, 1 * fs);
        auto const b = oracle::quadrature_temporal(pdm, 5 * fs, 3 * fs);
        CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
    }
    SUBCASE("matrix form equals the pointwise sum")
    {
        pdm.m = random_psd(64, 9);
        std::vector<double> t = {-3 * fs, 0.0, 2.5 * fs};
        auto const c = oracle::quadrature_temporal_matrix(pdm, t);
        for (std::size_t k = 0; k < t.size(); ++k)
            for (std::size_t l = 0; l < t.size(); ++l)
                CHECK(std::abs(c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))
                               - oracle::quadrature_temporal(pdm, t[k], t[l]))
                      < 1e-12 * c.cwiseAbs().maxCoeff());
    }
    SUBCASE("size limit")
    {
        Setup const big(512);
        auto const p = big.pdm(ElectronState::point());
        CQCL_CHECK_THROWS_CODE(oracle::quadrature_temporal_matrix(p, {0.0}), ErrorCode::TooLarge);
    }
}

TEST_CASE("point envelope is the point-emitter superposition")
{
    Setup const s(64);
    std::vector<double> t = {-2 * fs, 0.0, 1 * fs};
    auto const a = oracle::point_envelope(s.kin, s.model, s.win, t);
    auto const b = oracle::superposition_envelope(ElectronState::point(), s.kin, s.model, s.win, t, 512);
    for (std::size_t k = 0; k < t.size(); ++k)
        CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-9));
}
