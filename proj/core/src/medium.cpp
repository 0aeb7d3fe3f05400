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
#include "cqcl/medium.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cqcl/constants.hpp"
#include "cqcl/embedded.hpp"
#include "cqcl/error.hpp"
#include "cqcl/keyvalue.hpp"

namespace cqcl
{
namespace
{
std::string nm(double lambda)
{
    std::ostringstream os;
    os << lambda * 1e9 << " nm";
    return os.str();
}
} // namespace

DispersionModel DispersionModel::sellmeier(std::string name,
                                           SellmeierCoefficients const& coeffs,
                                           double lambda_min,
                                           double lambda_max)
{
    if (!(lambda_min > 0.0 && lambda_max > lambda_min))
        fail(ErrorCode::InvalidArgument, "sellmeier model '" + name + "': empty validity range");
    for (int i = 0; i < 3; ++i)
    {
        if (!(coeffs.c_um2[i] >= 0.0))
            fail(ErrorCode::InvalidArgument,
                 "sellmeier model '" + name + "': resonance constants must be non-negative");
    }
    DispersionModel m;
    m.name_ = std::move(name);
    m.coeffs_ = coeffs;
    m.lambda_min_ = lambda_min;
    m.lambda_max_ = lambda_max;
    return m;
}

DispersionModel DispersionModel::constant(double n,
                                          double lambda_min,
                                          double lambda_max,
                                          std::string name)
{
    if (!(n >= 1.0) || !std::isfinite(n))
        fail(ErrorCode::InvalidArgument, "constant index must be >= 1");
    if (!(lambda_min > 0.0 && lambda_max > lambda_min))
        fail(ErrorCode::InvalidArgument, "constant model: empty validity range");
    DispersionModel m;
    m.name_ = name.empty() ? "constant" : std::move(name);
    m.lambda_min_ = lambda_min;
    m.lambda_max_ = lambda_max;
    m.constant_ = true;
    m.n_const_ = n;
    return m;
}

void DispersionModel::check_range(double lambda) const
{
    if (!(lambda >= lambda_min_ && lambda <= lambda_max_))
    {
        fail(ErrorCode::OutOfRange,
             "wavelength " + nm(lambda) + " outside validity range [" + nm(lambda_min_) + ", "
                 + nm(lambda_max_) + "] of '" + name_ + "'");
    }
    if (constant_)
        return;
    double const l2 = (lambda * 1e6) * (lambda * 1e6);
    for (double c : coeffs_.c_um2)
    {
        if (c > 0.0 && std::abs(l2 - c) <= 1e-6 * c)
            fail(ErrorCode::NearResonance,
                 "wavelength " + nm(lambda) + " sits on a resonance of '" + name_ + "'");
    }
}

double DispersionModel::index_squared(double lambda_um) const
{
    double const l2 = lambda_um * lambda_um;
    double n2 = 1.0;
    for (int i = 0; i < 3; ++i)
        n2 += coeffs_.b[i] * l2 / (l2 - coeffs_.c_um2[i]);
    return n2;
}

double DispersionModel::refractive_index(double lambda) const
{
    check_range(lambda);
    if (constant_)
        return n_const_;
    double const n2 = index_squared(lambda * 1e6);
    if (!(n2 > 1.0))
        fail(ErrorCode::OutOfRange, "'" + name_ + "' has n <= 1 at " + nm(lambda));
    return std::sqrt(n2);
}

double DispersionModel::group_index(double lambda) const
{
    double const n = refractive_index(lambda);
    if (constant_)
        return n;
    // d(n^2)/d(lambda) = sum -2 B C lambda / (lambda^2 - C)^2, in um units
    double const l = lambda * 1e6;
    double const l2 = l * l;
    double dn2 = 0.0;
    for (int i = 0; i < 3; ++i)
    {
        double const d = l2 - coeffs_.c_um2[i];
        dn2 += -2.0 * coeffs_.b[i] * coeffs_.c_um2[i] * l / (d * d);
    }
    double const dn = dn2 / (2.0 * n);
    return n - l * dn;
}

double DispersionModel::index_at_omega(double omega) const
{
    return refractive_index(constants::wavelength_from_omega(omega));
}

double DispersionModel::group_index_at_omega(double omega) const
{
    return group_index(constants::wavelength_from_omega(omega));
}

DispersionModel fused_silica()
{
    return MaterialRegistry::builtin().get("fused_silica");
}

//---------------------------------------------------------------------------//

MaterialRegistry MaterialRegistry::builtin()
{
    static MaterialRegistry const registry
        = MaterialRegistry::parse(embedded::materials_text(), "<builtin materials>");
    return registry;
}

MaterialRegistry MaterialRegistry::parse(std::string_view text, std::string_view source)
{
    auto const doc = KeyValueDocument::parse(text, std::string(source));
    MaterialRegistry registry;
    for (auto const& section : doc.sections())
    {
        if (section.name.empty())
        {
            if (!section.entries.empty())
                fail(ErrorCode::ConfigError,
                     doc.where(section.entries.front().line)
                         + ": material entries must follow a [name] header");
            continue;
        }

        std::optional<std::vector<double>> b, c, range;
        std::optional<double> n_const;
        for (auto const& e : section.entries)
        {
            if (e.key == "B")
                b = parse_number_list(doc, e);
            else if (e.key == "C_um2")
                c = parse_number_list(doc, e);
            else if (e.key == "range_nm")
                range = parse_number_list(doc, e);
            else if (e.key == "n")
                n_const = parse_number(doc, e);
            else
                fail(ErrorCode::ConfigError,
                     doc.where(e.line) + ": unknown material field '" + e.key + "'");
        }

        auto where = doc.where(section.line) + ": material '" + section.name + "'";
        if (range && range->size() != 2)
            fail(ErrorCode::ConfigError, where + ": range_nm needs two values");
        try
        {
            if (n_const)
            {
                if (b || c)
                    fail(ErrorCode::ConfigError, where + ": give either n or B/C_um2, not both");
                double lo = range ? (*range)[0] * 1e-9 : 1e-9;
                double hi = range ? (*range)[1] * 1e-9 : 1.0;
                registry.add(DispersionModel::constant(*n_const, lo, hi, section.name));
                continue;
            }
            if (!b || !c || !range)
                fail(ErrorCode::ConfigError, where + ": needs B, C_um2 and range_nm");
            if (b->size() != 3 || c->size() != 3)
                fail(ErrorCode::ConfigError, where + ": B and C_um2 need three values each");
            SellmeierCoefficients coeffs;
            for (int i = 0; i < 3; ++i)
            {
                coeffs.b[i] = (*b)[i];
                coeffs.c_um2[i] = (*c)[i];
            }
            registry.add(DispersionModel::sellmeier(
                section.name, coeffs, (*range)[0] * 1e-9, (*range)[1] * 1e-9));
        }
        catch (Error const& err)
        {
            if (err.code() == ErrorCode::ConfigError)
                throw;
            fail(ErrorCode::ConfigError, where + ": " + err.what());
        }
    }
    return registry;
}

MaterialRegistry MaterialRegistry::load(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::IoError, "cannot read material file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str(), path.string());
}

void MaterialRegistry::add(DispersionModel model)
{
    auto name = model.name();
    models_.insert_or_assign(std::move(name), std::move(model));
}

bool MaterialRegistry::contains(std::string_view name) const
{
    return models_.find(name) != models_.end();
}

DispersionModel const& MaterialRegistry::get(std::string_view name) const
{
    auto it = models_.find(name);
    if (it == models_.end())
    {
        std::string known;
        for (auto const& [k, v] : models_)
            known += (known.empty() ? "" : ", ") + k;
        fail(ErrorCode::ConfigError,
             "unknown material '" + std::string(name) + "' (known: " + known + ")");
    }
    return it->second;
}

std::vector<std::string> MaterialRegistry::names() const
{
    std::vector<std::string> out;
    for (auto const& [k, v] : models_)
        out.push_back(k);
    return out;
}

//---------------------------------------------------------------------------//

double ParticleKinematics::speed() const
{
    return beta * constants::c_light;
}

Vec3 ParticleKinematics::velocity() const
{
    return {0.0, 0.0, speed()};
}

ParticleKinematics kinematics_from_kinetic(double kinetic_energy_ev, double rest_energy_ev)
{
    if (kinetic_energy_ev < 0.0)
        fail(ErrorCode::NegativeEnergy, "kinetic energy must be non-negative");
    if (!(rest_energy_ev > 0.0))
        fail(ErrorCode::InvalidArgument, "rest energy must be positive");
    ParticleKinematics k;
    k.kinetic_energy_ev = kinetic_energy_ev;
    k.rest_energy_ev = rest_energy_ev;
    k.gamma = 1.0 + kinetic_energy_ev / rest_energy_ev;
    // sqrt(g^2 - 1)/g avoids cancellation in 1 - 1/g^2 for small energies
    double const t = kinetic_energy_ev / rest_energy_ev;
    k.beta = std::sqrt(t * (t + 2.0)) / k.gamma;
    return k;
}

double cherenkov_angle(double beta, double n)
{
    if (!(beta > 0.0 && beta < 1.0))
        fail(ErrorCode::InvalidArgument, "beta must lie in (0, 1)");
    if (!(n > 0.0))
        fail(ErrorCode::InvalidArgument, "refractive index must be positive");
    double const bn = beta * n;
    if (bn < 1.0)
    {
        std::ostringstream os;
        os << "beta*n = " << bn << " <= 1, no Cherenkov emission";
        fail(ErrorCode::BelowThreshold, os.str());
    }
    return std::acos(1.0 / bn);
}

double cherenkov_wavevector(DispersionModel const& model, double omega)
{
    if (omega == 0.0)
        return 0.0;
    return model.index_at_omega(omega) * omega / constants::c_light;
}

Vec3 direction_from_angles(double theta, double azimuth)
{
    return {std::sin(theta) * std::cos(azimuth),
            std::sin(theta) * std::sin(azimuth),
            std::cos(theta)};
}

ConeGeometry cone_geometry(DispersionModel const& model,
                           ParticleKinematics const& kin,
                           double omega_0,
                           double azimuth,
                           double distance)
{
    if (!(distance > 0.0))
        fail(ErrorCode::InvalidArgument, "detector distance must be positive");
    ConeGeometry g;
    g.theta_c = cherenkov_angle(kin.beta, model.index_at_omega(omega_0));
    g.azimuth = azimuth;
    g.distance = distance;
    g.r_hat = direction_from_angles(g.theta_c, azimuth);
    return g;
}
} // namespace cqcl
