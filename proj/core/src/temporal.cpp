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
#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include <fftw3.h>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"
#include "cqcl/radiation.hpp"

namespace cqcl
{
namespace
{
using cplx = std::complex<double>;

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

class Fft1d
{
  public:
    Fft1d(std::size_t n, int sign) : n_(n)
    {
        in_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
        out_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n),
                                 reinterpret_cast<fftw_complex*>(in_),
                                 reinterpret_cast<fftw_complex*>(out_),
                                 sign,
                                 FFTW_ESTIMATE);
    }
    ~Fft1d()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    Fft1d(Fft1d const&) = delete;
    Fft1d& operator=(Fft1d const&) = delete;

    cplx* in() { return in_; }
    cplx const* out() const { return out_; }
    void clear_input() { std::fill(in_, in_ + n_, cplx{}); }
    void run() { fftw_execute(plan_); }

  private:
    std::size_t n_;
    cplx* in_ = nullptr;
    cplx* out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

double alternating(std::size_t i)
{
    return (i % 2 == 0) ? 1.0 : -1.0;
}
} // namespace

ShockwaveProfile temporal_autocorrelation(PhotonDensityMatrix const& pdm,
                                          TemporalOptions const& options)
{
    auto const n = pdm.size();
    if (options.oversample < 1)
        fail(ErrorCode::InvalidArgument, "oversample factor must be at least 1");
    if (n == 0 || pdm.m.rows() != static_cast<Eigen::Index>(n))
        fail(ErrorCode::InvalidArgument, "density matrix does not match its grid");

    std::size_t const np = n * options.oversample;
    double const dw = pdm.omega.step;
    double const dt = constants::two_pi / (static_cast<double>(np) * dw);
    double const w_min = pdm.omega.start;

    std::size_t k0 = 0, k1 = np - 1;
    if (options.half_span)
    {
        if (!(*options.half_span > 0.0))
            fail(ErrorCode::InvalidArgument, "time half-span must be positive");
        auto const reach = static_cast<std::size_t>(
            std::min(std::floor(*options.half_span / dt), static_cast<double>(np / 2)));
        k0 = np / 2 - reach;
        k1 = std::min(np - 1, np / 2 + reach);
    }
    std::size_t const kept = k1 - k0 + 1;

    ShockwaveProfile prof;
    prof.padded_size = np;
    prof.first_index = k0;
    prof.time = {(static_cast<double>(k0) - static_cast<double>(np / 2)) * dt, dt, kept};
    prof.omega = pdm.omega;
    prof.spectrum = power_spectrum(pdm);

    // A(k, j) = sum_i (-1)^i M_ij exp(-2 pi i i k / N_p)
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(n));
    {
        Fft1d fwd(np, FFTW_FORWARD);
        for (std::size_t j = 0; j < n; ++j)
        {
            fwd.clear_input();
            for (std::size_t i = 0; i < n; ++i)
                fwd.in()[i] = alternating(i) * pdm.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            fwd.run();
            for (std::size_t k = 0; k < kept; ++k)
                a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = fwd.out()[k0 + k];
        }
    }

    std::vector<cplx> phase(kept);
    for (std::size_t k = 0; k < kept; ++k)
        phase[k] = std::polar(1.0, -w_min * prof.time.value(k));

    // C(k, l) = dw^2 e^{-i w_min (t_k - t_l)} sum_j (-1)^j A(k, j) exp(+2 pi i j l / N_p)
    prof.c.resize(static_cast<Eigen::Index>(kept), static_cast<Eigen::Index>(kept));
    {
        Fft1d bwd(np, FFTW_BACKWARD);
        for (std::size_t k = 0; k < kept; ++k)
        {
            bwd.clear_input();
            for (std::size_t j = 0; j < n; ++j)
                bwd.in()[j] = alternating(j) * a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
            bwd.run();
            for (std::size_t l = 0; l < kept; ++l)
            {
                prof.c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))
                    = dw * dw * phase[k] * std::conj(phase[l]) * bwd.out()[k0 + l];
            }
        }
    }

    prof.power.resize(kept);
    for (std::size_t k = 0; k < kept; ++k)
        prof.power[k] = prof.c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    return prof;
}

Eigen::MatrixXcd inverse_temporal(ShockwaveProfile const& profile)
{
    if (!profile.is_full_window())
        fail(ErrorCode::InvalidArgument, "inverse transform needs the full time window");
    std::size_t const np = profile.padded_size;
    std::size_t const n = profile.omega.count;
    double const dw = profile.omega.step;
    double const w_min = profile.omega.start;

    std::vector<cplx> phase(np);
    for (std::size_t k = 0; k < np; ++k)
        phase[k] = std::polar(1.0, w_min * profile.time.value(k));

    // B(i, l) = sum_k e^{i w_min t_k} C_kl exp(+2 pi i i k / N_p)
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(np));
    {
        Fft1d bwd(np, FFTW_BACKWARD);
        for (std::size_t l = 0; l < np; ++l)
        {
            for (std::size_t k = 0; k < np; ++k)
                bwd.in()[k] = phase[k] * profile.c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
            bwd.run();
            for (std::size_t i = 0; i < n; ++i)
                b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = bwd.out()[i];
        }
    }

    double const scale = dw * dw / (static_cast<double>(np) * static_cast<double>(np) * dw * dw * dw * dw);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    {
        Fft1d fwd(np, FFTW_FORWARD);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t l = 0; l < np; ++l)
                fwd.in()[l] = std::conj(phase[l]) * b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
            fwd.run();
            for (std::size_t j = 0; j < n; ++j)
            {
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
                    = scale * alternating(i + j) * fwd.out()[j];
            }
        }
    }
    return m;
}

std::complex<double> g1(ShockwaveProfile const& profile, double tau)
{
    double const half = 0.5 * profile.window();
    if (std::abs(tau) > half * (1.0 + 1e-12))
        fail(ErrorCode::OutOfWindow, "delay outside the time window");
    double total = 0.0;
    cplx sum{};
    for (std::size_t i = 0; i < profile.spectrum.size(); ++i)
    {
        total += profile.spectrum[i];
        sum += profile.spectrum[i] * std::polar(1.0, -profile.omega.value(i) * tau);
    }
    if (!(total > 0.0))
        fail(ErrorCode::DegenerateEnvelope, "power spectrum is zero");
    if (tau == 0.0)
        return 1.0;
    return sum / total;
}

std::vector<std::complex<double>> g1_series(ShockwaveProfile const& profile)
{
    std::vector<cplx> out(profile.time.count);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = g1(profile, profile.time.value(k));
    return out;
}

double fwhm(UniformGrid const& x, std::vector<double> const& y)
{
    if (y.size() < 3)
        fail(ErrorCode::DegenerateEnvelope, "too few samples for a width");
    auto const imax = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    double const half = 0.5 * y[imax];
    if (!(half > 0.0))
        fail(ErrorCode::DegenerateEnvelope, "curve has no positive maximum");

    std::size_t l = imax;
    while (l > 0 && y[l - 1] >= half)
        --l;
    std::size_t r = imax;
    while (r + 1 < y.size() && y[r + 1] >= half)
        ++r;
    if (l == 0 || r + 1 == y.size())
        fail(ErrorCode::DegenerateEnvelope, "half maximum not reached inside the window");

    auto cross = [&](std::size_t inside, std::size_t outside) {
        double const f = (y[inside] - half) / (y[inside] - y[outside]);
        return x.value(inside) + f * (x.value(outside) - x.value(inside));
    };
    return cross(r, r + 1) - cross(l, l - 1);
}

EnvelopeStats envelope_stats(ShockwaveProfile const& profile)
{
    EnvelopeStats st;
    auto const& p = profile.power;
    double sum = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
    {
        sum += p[k];
        m1 += p[k] * profile.time.value(k);
        st.peak = std::max(st.peak, p[k]);
    }
    if (!(sum > 0.0) || !(st.peak > 0.0))
        fail(ErrorCode::DegenerateEnvelope, "power envelope is numerically zero");
    st.mean = m1 / sum;
    double m2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
    {
        double const d = profile.time.value(k) - st.mean;
        m2 += p[k] * d * d;
    }
    st.std = std::sqrt(std::max(0.0, m2 / sum));
    st.energy = sum * profile.time.step;
    try
    {
        st.fwhm = fwhm(profile.time, p);
    }
    catch (Error const&)
    {
        // flat or clipped envelopes have no FWHM inside the window
        st.fwhm = std::numeric_limits<double>::quiet_NaN();
    }
    return st;
}

double shock_position_width(ShockwaveProfile const& profile, double v_g)
{
    if (!(v_g > 0.0))
        fail(ErrorCode::InvalidArgument, "group velocity must be positive");
    return v_g * envelope_stats(profile).std;
}

double uncertainty_check(double delta_x_shw, double delta_p)
{
    if (!(delta_x_shw > 0.0 && delta_p > 0.0))
        fail(ErrorCode::InvalidArgument, "uncertainties must be positive");
    return delta_x_shw * delta_p / (0.5 * constants::hbar);
}
} // namespace cqcl
