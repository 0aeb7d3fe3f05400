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
// Throughput of the spectral and temporal kernels over grid size.

#include <benchmark/benchmark.h>

#include "cqcl/constants.hpp"
#include "cqcl/radiation.hpp"

namespace
{
struct Bench
{
    cqcl::DispersionModel model = cqcl::fused_silica();
    cqcl::ParticleKinematics kin = cqcl::kinematics_from_kinetic(1e6, cqcl::constants::electron_rest_energy_ev);
    cqcl::DetectionWindow win;

    explicit Bench(std::size_t n) : win(cqcl::DetectionWindow::build(spec(n), model, kin)) {}

    static cqcl::WindowSpec spec(std::size_t n)
    {
        cqcl::WindowSpec s;
        s.n = n;
        s.lambda_lo = 400e-9;
        s.lambda_hi = 700e-9;
        s.lambda_0 = 550e-9;
        return s;
    }
};

void BM_SpectralAutocorrelation(benchmark::State& state)
{
    Bench const b(static_cast<std::size_t>(state.range(0)));
    auto const emitter = cqcl::ElectronState::spherical_gaussian(254e-9);
    for (auto _ : state)
        benchmark::DoNotOptimize(cqcl::spectral_autocorrelation(emitter, b.kin, b.model, b.win));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralAutocorrelation)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_TemporalAutocorrelation(benchmark::State& state)
{
    Bench const b(static_cast<std::size_t>(state.range(0)));
    auto const pdm = cqcl::spectral_autocorrelation(cqcl::ElectronState::spherical_gaussian(254e-9), b.kin,
                                                    b.model, b.win);
    cqcl::TemporalOptions const options{static_cast<std::size_t>(state.range(1)), 30e-15};
    for (auto _ : state)
        benchmark::DoNotOptimize(cqcl::temporal_autocorrelation(pdm, options));
}
BENCHMARK(BM_TemporalAutocorrelation)->ArgsProduct({{64, 256, 1024}, {1, 4}});

void BM_FullWindowTransform(benchmark::State& state)
{
    Bench const b(static_cast<std::size_t>(state.range(0)));
    auto const pdm = cqcl::spectral_autocorrelation(cqcl::ElectronState::point(), b.kin, b.model, b.win);
    for (auto _ : state)
        benchmark::DoNotOptimize(cqcl::temporal_autocorrelation(pdm));
}
BENCHMARK(BM_FullWindowTransform)->RangeMultiplier(2)->Range(64, 512);
} // namespace

BENCHMARK_MAIN();
