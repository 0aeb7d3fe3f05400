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

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Core>

#include "cqcl/constants.hpp"
#include "cqcl/emitter.hpp"
#include "cqcl/medium.hpp"
#include "cqcl/radiation.hpp"

namespace cqcl::test
{
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double fs = 1e-15;

inline ParticleKinematics mev_electron()
{
    return kinematics_from_kinetic(1e6, constants::electron_rest_energy_ev);
}

//! Silica, 1 MeV electron, visible band; the usual setup.
struct Setup
{
    DispersionModel model = fused_silica();
    ParticleKinematics kin = mev_electron();
    DetectionWindow win;

    explicit Setup(std::size_t n = 256,
                   double lo = 400 * nm,
                   double hi = 700 * nm,
                   AcceptanceProfile profile = AcceptanceProfile::RaisedCosine)
        : win(DetectionWindow::build(spec(n, lo, hi, profile), model, kin))
    {
    }

    Setup(DispersionModel m, WindowSpec const& s)
        : model(std::move(m)), win(DetectionWindow::build(s, model, kin))
    {
    }

    static WindowSpec spec(std::size_t n, double lo, double hi, AcceptanceProfile profile)
    {
        WindowSpec s;
        s.n = n;
        s.lambda_lo = lo;
        s.lambda_hi = hi;
        s.lambda_0 = 0.5 * (lo + hi);
        s.profile = profile;
        return s;
    }

    PhotonDensityMatrix pdm(ElectronState const& state) const
    {
        return spectral_autocorrelation(state, kin, model, win);
    }

    double v_g0() const
    {
        return constants::c_light / model.group_index_at_omega(win.omega_0());
    }
};

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

//! max |a - b| / max |b|
inline double max_rel(Eigen::MatrixXcd const& a, Eigen::MatrixXcd const& b)
{
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

//! Random Hermitian PSD matrix B B^H.
inline Eigen::MatrixXcd random_psd(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            b(i, j) = {g(rng), g(rng)};
    return b * b.adjoint();
}

//! Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(std::string const& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("cqcl-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

#define CQCL_CHECK_THROWS_CODE(expr, expected_code)                  \
    do                                                               \
    {                                                                \
        bool caught_ = false;                                        \
        try                                                          \
        {                                                            \
            (void)(expr);                                            \
        }                                                            \
        catch (::cqcl::Error const& e_)                              \
        {                                                            \
            caught_ = true;                                          \
            CHECK_MESSAGE(e_.code() == (expected_code), e_.what());  \
        }                                                            \
        CHECK_MESSAGE(caught_, "expected cqcl::Error from " #expr);  \
    } while (false)

} // namespace cqcl::test
