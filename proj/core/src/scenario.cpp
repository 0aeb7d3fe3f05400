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
#include "cqcl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "cqcl/constants.hpp"
#include "cqcl/digest.hpp"
#include "cqcl/embedded.hpp"
#include "cqcl/error.hpp"
#include "cqcl/keyvalue.hpp"

namespace cqcl
{
namespace
{
using Handler = std::function<void(KeyValueDocument const&, KeyValueEntry const&, ScenarioConfig&)>;
using SectionSchema = std::map<std::string, Handler, std::less<>>;

Handler number_into(double ScenarioConfig::*field, double scale = 1.0)
{
    return [=](auto const& doc, auto const& e, ScenarioConfig& c) {
        c.*field = parse_number(doc, e) * scale;
    };
}

template<class F>
Handler with_number(F f)
{
    return [=](auto const& doc, auto const& e, ScenarioConfig& c) { f(c, parse_number(doc, e)); };
}

template<class F>
Handler with_text(F f)
{
    return [=](auto const&, auto const& e, ScenarioConfig& c) { f(c, e.value); };
}

std::map<std::string, SectionSchema, std::less<>> const& schema()
{
    static auto const table = [] {
        std::map<std::string, SectionSchema, std::less<>> s;
        s["scenario"] = {
            {"id", with_text([](auto& c, auto const& v) { c.id = v; })},
            {"outputs",
             [](auto const&, auto const& e, ScenarioConfig& c) { c.outputs = parse_word_list(e); }},
            {"format",
             with_text([](auto& c, auto const& v) { c.format = matrix_format_from_string(v); })},
            {"seed",
             [](auto const& doc, auto const& e, ScenarioConfig& c) {
                 auto const v = parse_integer(doc, e);
                 if (v < 0)
                     fail(ErrorCode::ConfigError, doc.where(e.line) + ": seed must be non-negative");
                 c.seed = static_cast<std::uint64_t>(v);
             }},
            {"noise", number_into(&ScenarioConfig::noise)},
        };
        s["emitter"] = {
            {"type", with_text([](auto& c, auto const& v) { c.emitter.type = v; })},
            {"size_nm", with_number([](auto& c, double v) { c.emitter.size = v * 1e-9; })},
            {"energy_spread_ev",
             with_number([](auto& c, double v) { c.emitter.energy_spread_ev = v; })},
            {"sigma_par_nm", with_number([](auto& c, double v) { c.emitter.sigma_par = v * 1e-9; })},
            {"sigma_perp_nm", with_number([](auto& c, double v) { c.emitter.sigma_perp = v * 1e-9; })},
            {"sigma_x_nm", with_number([](auto& c, double v) { c.emitter.sigma_x = v * 1e-9; })},
            {"xi_nm", with_number([](auto& c, double v) { c.emitter.xi = v * 1e-9; })},
            {"coupling", with_number([](auto& c, double v) { c.emitter.coupling = v; })},
            {"coupling_phase_rad",
             with_number([](auto& c, double v) { c.emitter.coupling_phase = v; })},
            {"modulation_thz",
             with_number([](auto& c, double v) { c.emitter.modulation_frequency = v * 1e12; })},
            {"envelope_sigma_nm",
             with_number([](auto& c, double v) { c.emitter.envelope_sigma = v * 1e-9; })},
            {"transverse_sigma_nm",
             with_number([](auto& c, double v) { c.emitter.transverse_sigma = v * 1e-9; })},
            {"phase_rule", with_text([](auto& c, auto const& v) { c.emitter.phase_rule = v; })},
            {"phase_b", with_number([](auto& c, double v) { c.emitter.phase_b = v; })},
            {"phases",
             [](auto const& doc, auto const& e, ScenarioConfig& c) {
                 c.emitter.phases = parse_number_list(doc, e);
             }},
            {"sideband_cap",
             [](auto const& doc, auto const& e, ScenarioConfig& c) {
                 c.emitter.sideband_cap = static_cast<int>(parse_integer(doc, e));
             }},
            {"density_file", with_text([](auto& c, auto const& v) { c.emitter.density_file = v; })},
        };
        s["kinematics"] = {
            {"kinetic_energy_ev", number_into(&ScenarioConfig::kinetic_energy_ev)},
            {"rest_energy_ev", number_into(&ScenarioConfig::rest_energy_ev)},
        };
        s["medium"] = {
            {"material", with_text([](auto& c, auto const& v) { c.material = v; })},
            {"material_file", with_text([](auto& c, auto const& v) { c.material_file = v; })},
        };
        s["detection"] = {
            {"lambda_min_nm", with_number([](auto& c, double v) { c.window.lambda_lo = v * 1e-9; })},
            {"lambda_max_nm", with_number([](auto& c, double v) { c.window.lambda_hi = v * 1e-9; })},
            {"lambda_0_nm", with_number([](auto& c, double v) { c.window.lambda_0 = v * 1e-9; })},
            {"n",
             [](auto const& doc, auto const& e, ScenarioConfig& c) {
                 auto const v = parse_integer(doc, e);
                 if (v < static_cast<long long>(min_grid_points) || !is_power_of_two(static_cast<std::size_t>(v)))
                 {
                     fail(ErrorCode::ConfigError,
                          doc.where(e.line) + ": field 'n': grid size " + e.value
                              + " violates the grid policy (power of two, at least "
                              + std::to_string(min_grid_points) + ")");
                 }
                 c.window.n = static_cast<std::size_t>(v);
             }},
            {"acceptance",
             with_text([](auto& c, auto const& v) { c.window.profile = acceptance_from_string(v); })},
            {"roll_off", with_number([](auto& c, double v) { c.window.roll_off = v; })},
            {"distance_m", with_number([](auto& c, double v) { c.window.distance = v; })},
            {"azimuth_deg",
             with_number([](auto& c, double v) { c.window.azimuth = v * constants::pi / 180.0; })},
            {"oversample",
             [](auto const& doc, auto const& e, ScenarioConfig& c) {
                 auto const v = parse_integer(doc, e);
                 if (v < 1 || v > 64)
                     fail(ErrorCode::ConfigError, doc.where(e.line) + ": oversample must be in [1, 64]");
                 c.temporal.oversample = static_cast<std::size_t>(v);
             }},
            {"time_half_span_fs",
             with_number([](auto& c, double v) { c.temporal.half_span = v * 1e-15; })},
        };
        s["reconstruction"] = {
            {"width_convention",
             with_text([](auto& c, auto const& v) {
                 if (v == "sigma")
                     c.width_convention = WidthConvention::Sigma;
                 else if (v == "fwhm")
                     c.width_convention = WidthConvention::Fwhm;
                 else
                     fail(ErrorCode::ConfigError, "width_convention must be sigma or fwhm");
             })},
            {"interaction_length_um",
             with_number([](auto& c, double v) { c.interaction_length = v * 1e-6; })},
        };
        return s;
    }();
    return table;
}

std::string fmt(double v, int digits = 6)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string join(std::vector<std::string> const& words, char const* sep = ", ")
{
    std::string out;
    for (auto const& w : words)
        out += (out.empty() ? "" : sep) + w;
    return out;
}

void require_positive(ScenarioConfig const& c, std::string const& field, double v)
{
    if (!(v > 0.0))
        fail(ErrorCode::ConfigError, c.source + ":" + std::to_string(c.line_of(field)) + ": field '"
                                         + field + "' must be positive");
}

void check_emitter_schema(ScenarioConfig const& c)
{
    auto const& e = c.emitter;
    static std::set<std::string> const types
        = {"gaussian", "point", "axial_gaussian", "gaussian_schell", "pinem", "empirical"};
    if (!types.count(e.type))
    {
        fail(ErrorCode::ConfigError,
             c.source + ":" + std::to_string(c.line_of("emitter.type")) + ": unknown emitter type '"
                 + e.type + "' (supported: axial_gaussian, empirical, gaussian, gaussian_schell, pinem, point)");
    }
    if (e.type == "gaussian")
    {
        if (e.size.has_value() == e.energy_spread_ev.has_value())
            fail(ErrorCode::ConfigError,
                 c.source + ": [emitter] gaussian needs exactly one of size_nm, energy_spread_ev");
        if (e.size)
            require_positive(c, "emitter.size_nm", *e.size);
        else
            require_positive(c, "emitter.energy_spread_ev", *e.energy_spread_ev);
    }
    else if (e.type == "axial_gaussian")
    {
        require_positive(c, "emitter.sigma_par_nm", e.sigma_par);
        require_positive(c, "emitter.sigma_perp_nm", e.sigma_perp);
    }
    else if (e.type == "gaussian_schell")
    {
        require_positive(c, "emitter.sigma_x_nm", e.sigma_x);
        require_positive(c, "emitter.xi_nm", e.xi);
    }
    else if (e.type == "pinem")
    {
        require_positive(c, "emitter.modulation_thz", e.modulation_frequency);
        require_positive(c, "emitter.envelope_sigma_nm", e.envelope_sigma);
        if (e.coupling < 0.0 || e.transverse_sigma < 0.0)
            fail(ErrorCode::ConfigError, c.source + ": [emitter] coupling and transverse_sigma_nm must be >= 0");
        if (e.phase_rule != "quadratic" && e.phase_rule != "explicit")
            fail(ErrorCode::ConfigError,
                 c.source + ":" + std::to_string(c.line_of("emitter.phase_rule"))
                     + ": phase_rule must be quadratic or explicit");
        if (e.phase_rule == "explicit" && e.phases.empty())
            fail(ErrorCode::ConfigError, c.source + ": [emitter] explicit phase_rule needs phases");
    }
    else if (e.type == "empirical")
    {
        if (e.density_file.empty())
            fail(ErrorCode::ConfigError, c.source + ": [emitter] empirical needs density_file");
    }
}

std::string output_name(ScenarioConfig const& c, std::string const& artifact, MatrixFormat format)
{
    if (artifact == "density_matrix")
        return c.id + ".density" + std::string(file_extension(format));
    if (artifact == "profile")
        return c.id + ".profile" + std::string(file_extension(format));
    if (artifact == "envelope")
        return c.id + ".envelope.dat";
    if (artifact == "spectrum")
        return c.id + ".spectrum.dat";
    return c.id + ".report.txt";
}

double delta_lambda_of(WindowSpec const& w)
{
    return w.lambda_hi - w.lambda_lo;
}
} // namespace

int ScenarioConfig::line_of(std::string const& field) const
{
    auto it = lines.find(field);
    return it == lines.end() ? 0 : it->second;
}

std::vector<std::string> const& known_outputs()
{
    static std::vector<std::string> const names
        = {"density_matrix", "envelope", "profile", "report", "spectrum"};
    return names;
}

ScenarioConfig parse_config(std::string_view text, std::string source)
{
    auto const doc = KeyValueDocument::parse(text, source);
    ScenarioConfig c;
    c.source = source;
    c.outputs = {"density_matrix", "report"};
    for (auto const& section : doc.sections())
    {
        if (section.name.empty())
        {
            if (!section.entries.empty())
                fail(ErrorCode::ConfigError,
                     doc.where(section.entries.front().line) + ": entry outside any section");
            continue;
        }
        auto const s = schema().find(section.name);
        if (s == schema().end())
        {
            std::vector<std::string> names;
            for (auto const& [k, v] : schema())
                names.push_back("[" + k + "]");
            fail(ErrorCode::ConfigError,
                 doc.where(section.line) + ": unknown section [" + section.name + "] (known: " + join(names) + ")");
        }
        for (auto const& e : section.entries)
        {
            auto const h = s->second.find(e.key);
            if (h == s->second.end())
            {
                std::vector<std::string> keys;
                for (auto const& [k, v] : s->second)
                    keys.push_back(k);
                fail(ErrorCode::ConfigError,
                     doc.where(e.line) + ": unknown field '" + e.key + "' in [" + section.name
                         + "] (known: " + join(keys) + ")");
            }
            try
            {
                h->second(doc, e, c);
            }
            catch (Error const& err)
            {
                if (err.code() == ErrorCode::ConfigError && std::string(err.what()).find(doc.where(e.line)) != std::string::npos)
                    throw;
                fail(ErrorCode::ConfigError,
                     doc.where(e.line) + ": field '" + e.key + "': " + err.what());
            }
            c.lines[section.name + "." + e.key] = e.line;
        }
    }

    if (c.id.empty())
        fail(ErrorCode::ConfigError, source + ": [scenario] id is required");
    if (c.id.find_first_of("/\\ \t") != std::string::npos)
        fail(ErrorCode::ConfigError,
             source + ":" + std::to_string(c.line_of("scenario.id")) + ": id must be a plain file stem");
    for (auto const& o : c.outputs)
    {
        auto const& k = known_outputs();
        if (std::find(k.begin(), k.end(), o) == k.end())
            fail(ErrorCode::ConfigError,
                 source + ":" + std::to_string(c.line_of("scenario.outputs")) + ": unknown output '" + o
                     + "' (supported: " + join(k) + ")");
    }
    if (c.noise < 0.0)
        fail(ErrorCode::ConfigError, source + ": [scenario] noise must be >= 0");
    if (c.kinetic_energy_ev < 0.0)
        fail(ErrorCode::ConfigError,
             source + ":" + std::to_string(c.line_of("kinematics.kinetic_energy_ev"))
                 + ": kinetic energy must be non-negative");
    require_positive(c, "kinematics.rest_energy_ev", c.rest_energy_ev);
    require_positive(c, "detection.distance_m", c.window.distance);
    if (!(c.window.lambda_lo > 0.0 && c.window.lambda_hi > c.window.lambda_lo))
        fail(ErrorCode::ConfigError, source + ": [detection] needs 0 < lambda_min_nm < lambda_max_nm");
    if (!c.lines.count("detection.lambda_0_nm"))
        c.window.lambda_0 = 0.5 * (c.window.lambda_lo + c.window.lambda_hi);
    if (!(c.window.lambda_0 >= c.window.lambda_lo && c.window.lambda_0 <= c.window.lambda_hi))
        fail(ErrorCode::ConfigError,
             source + ":" + std::to_string(c.line_of("detection.lambda_0_nm"))
                 + ": lambda_0_nm must lie inside the detection band");
    if (!(c.window.roll_off >= 0.0 && c.window.roll_off <= 1.0))
        fail(ErrorCode::ConfigError,
             source + ":" + std::to_string(c.line_of("detection.roll_off")) + ": roll_off must lie in [0, 1]");
    if (c.interaction_length)
        require_positive(c, "reconstruction.interaction_length_um", *c.interaction_length);
    check_emitter_schema(c);
    return c;
}

ScenarioConfig load_config(std::filesystem::path const& path)
{
    auto c = parse_config(read_file(path), path.string());
    auto const base = path.parent_path();
    if (!c.emitter.density_file.empty() && c.emitter.density_file.is_relative())
        c.emitter.density_file = base / c.emitter.density_file;
    if (c.material_file && c.material_file->is_relative())
        c.material_file = base / *c.material_file;
    return c;
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (auto const& p : embedded::presets())
        out.emplace_back(p.name);
    return out;
}

std::string_view preset_text(std::string_view name)
{
    for (auto const& p : embedded::presets())
    {
        if (p.name == name)
            return p.text;
    }
    fail(ErrorCode::ConfigError,
         "unknown preset '" + std::string(name) + "' (available: " + join(preset_names()) + ")");
}

ScenarioConfig load_preset(std::string_view name)
{
    return parse_config(preset_text(name), "preset:" + std::string(name));
}

//---------------------------------------------------------------------------//

ScenarioSetup build_setup(ScenarioConfig const& c)
{
    auto registry = c.material_file ? MaterialRegistry::load(*c.material_file) : MaterialRegistry::builtin();
    auto model = registry.get(c.material);
    auto kin = kinematics_from_kinetic(c.kinetic_energy_ev, c.rest_energy_ev);

    auto const& e = c.emitter;
    auto state = [&]() -> ElectronState {
        if (e.type == "gaussian")
        {
            double const r = e.size ? *e.size : size_from_energy_spread(*e.energy_spread_ev, kin);
            return ElectronState::spherical_gaussian(r);
        }
        if (e.type == "point")
            return ElectronState::point();
        if (e.type == "axial_gaussian")
            return ElectronState::axial_gaussian(e.sigma_par, e.sigma_perp);
        if (e.type == "gaussian_schell")
            return ElectronState::gaussian_schell(e.sigma_x, e.xi);
        if (e.type == "pinem")
        {
            auto rule = e.phase_rule == "explicit" ? PhaseRule::explicit_list(e.phases)
                                                   : PhaseRule::quadratic(e.phase_b);
            return make_pinem(std::polar(e.coupling, e.coupling_phase),
                              constants::two_pi * e.modulation_frequency,
                              kin.speed(),
                              e.envelope_sigma,
                              rule,
                              e.transverse_sigma,
                              e.sideband_cap);
        }
        return load_empirical_density(e.density_file);
    }();

    auto window = DetectionWindow::build(c.window, model, kin);
    return {std::move(model), kin, std::move(state), std::move(window)};
}

bool has_errors(std::vector<Diagnostic> const& diags)
{
    return std::any_of(diags.begin(), diags.end(),
                       [](auto const& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::vector<Diagnostic> validate_config(ScenarioConfig const& c)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string const& field, std::string const& msg) {
        int const line = c.line_of(field);
        out.push_back({Diagnostic::Severity::Error,
                       c.source + ":" + (line ? std::to_string(line) + ":" : std::string{}) + " " + msg});
    };
    auto warning = [&](std::string const& field, std::string const& msg) {
        int const line = c.line_of(field);
        out.push_back({Diagnostic::Severity::Warning,
                       c.source + ":" + (line ? std::to_string(line) + ":" : std::string{}) + " " + msg});
    };

    std::optional<DispersionModel> model;
    try
    {
        auto registry = c.material_file ? MaterialRegistry::load(*c.material_file) : MaterialRegistry::builtin();
        model = registry.get(c.material);
    }
    catch (Error const& err)
    {
        error("medium.material", err.what());
        return out;
    }
    auto const kin = kinematics_from_kinetic(c.kinetic_energy_ev, c.rest_energy_ev);

    // grid and material range
    std::optional<DetectionWindow> window;
    try
    {
        window = DetectionWindow::build(c.window, *model, kin);
    }
    catch (Error const& err)
    {
        if (err.code() == ErrorCode::BelowThreshold)
            error("kinematics.kinetic_energy_ev",
                  std::string("threshold: ") + err.what() + " at lambda_0 = " + fmt(c.window.lambda_0 * 1e9)
                      + " nm (omega = " + fmt(constants::omega_from_wavelength(c.window.lambda_0)) + " rad/s)");
        else if (err.code() == ErrorCode::OutOfRange || err.code() == ErrorCode::NearResonance)
            error("detection.lambda_0_nm", std::string("material range: ") + err.what());
        else
            error("detection.n", std::string("grid policy: ") + err.what());
    }
    if (!window)
        return out;

    auto const& grid = window->grid();
    for (double lam : {constants::wavelength_from_omega(grid.back()), constants::wavelength_from_omega(grid.start)})
    {
        if (lam < model->lambda_min() || lam > model->lambda_max())
        {
            error("detection.lambda_min_nm",
                  "material range: frequency grid reaches " + fmt(lam * 1e9) + " nm, outside the validity range ["
                      + fmt(model->lambda_min() * 1e9) + ", " + fmt(model->lambda_max() * 1e9) + "] nm of '"
                      + model->name() + "' (acceptance skirts extend the grid beyond the band)");
            return out;
        }
    }
    for (std::size_t i = 0; i < grid.count; ++i)
    {
        double const w = grid.value(i);
        double const bn = kin.beta * model->index_at_omega(w);
        if (!(bn > 1.0))
        {
            error("kinematics.kinetic_energy_ev",
                  "threshold: beta*n = " + fmt(bn) + " <= 1 at omega = " + fmt(w) + " rad/s (lambda = "
                      + fmt(constants::wavelength_from_omega(w) * 1e9) + " nm)");
            return out;
        }
    }

    std::optional<ElectronState> state;
    try
    {
        state = build_setup(c).state;
    }
    catch (Error const& err)
    {
        error("emitter.type", std::string("emitter: ") + err.what());
        return out;
    }

    // frequency step against the emitter width
    auto const& dir = window->geometry().r_hat;
    double const width = std::sqrt(projected_moments(*state, dir).variance);
    double const ng = model->group_index_at_omega(window->omega_0());
    double const dq = ng * grid.step / constants::c_light;
    if (dq * width > constants::pi)
    {
        error("detection.n", "grid policy: frequency step too coarse for a " + fmt(width * 1e9)
                                 + " nm emitter; raise n");
    }
    else if (state->kind() != EmitterKind::PinemComb)
    {
        double const samples = 1.0 / (dq * width);
        if (samples < 16.0)
            warning("detection.n", "grid policy: emitter coherence width spans only " + fmt(samples, 3)
                                       + " frequency samples (16 recommended)");
    }
    return out;
}

std::vector<Diagnostic> validate_config_text(std::string_view text, std::string source)
{
    try
    {
        return validate_config(parse_config(text, std::move(source)));
    }
    catch (Error const& err)
    {
        return {{Diagnostic::Severity::Error, err.what()}};
    }
}

//---------------------------------------------------------------------------//

Report reconstruct_report(PhotonDensityMatrix const& pdm, WidthConvention convention)
{
    Report r;
    auto const coh = coherence_width(pdm);
    auto m = coh.measurement;
    r.set("coherence_status", std::string(to_string(coh.status)));
    r.set("width_convention", convention == WidthConvention::Sigma ? "sigma" : "fwhm");
    r.set("v_g", m.v_g);
    r.set("delta_omega_coh", m.delta_omega_coh);
    r.set("fit_residual", coh.fit_residual);
    r.set("delta_max", coh.delta_max);
    if (convention == WidthConvention::Fwhm)
    {
        m.delta_omega_coh *= fwhm_per_sigma;
        r.set("fwhm_per_sigma", fwhm_per_sigma);
    }
    r.set("size_estimate_nm", size_from_coherence(m) * 1e9);
    if (coh.status == CoherenceStatus::BandLimited)
        r.set("size_estimate_note", "upper_bound_detection_limited");
    if (!coh.fringe_peaks.empty())
    {
        std::string peaks;
        for (double p : coh.fringe_peaks)
            peaks += (peaks.empty() ? "" : " ") + fmt(p, 10);
        r.set("fringe_peaks", peaks);
        r.set("fringe_period", coh.fringe_peaks.front());
    }
    return r;
}

ScenarioResult simulate(ScenarioConfig const& c)
{
    auto setup = build_setup(c);
    ScenarioResult res;
    res.pdm = spectral_autocorrelation(setup.state, setup.kin, setup.model, setup.window);
    if (c.noise > 0.0)
        res.pdm = add_noise(std::move(res.pdm), c.noise, c.seed);

    auto& r = res.report;
    r.set("scenario", c.id);
    r.set("emitter_kind", res.pdm.meta.emitter_kind);
    r.set("emitter_hash", res.pdm.meta.emitter_hash);
    r.set("material", setup.model.name());
    r.set("kinetic_energy_ev", c.kinetic_energy_ev);
    r.set("beta", setup.kin.beta);
    r.set("gamma", setup.kin.gamma);
    r.set("lambda_0_nm", c.window.lambda_0 * 1e9);
    r.set("index_0", res.pdm.meta.index_0);
    r.set("group_index_0", res.pdm.meta.group_index_0);
    r.set("theta_c_deg", res.pdm.meta.theta_c * 180.0 / constants::pi);
    r.set("grid_n", std::to_string(res.pdm.size()));
    r.set("omega_min", res.pdm.omega.start);
    r.set("omega_max", res.pdm.omega.back());
    r.set("omega_step", res.pdm.omega.step);
    r.set("acceptance", std::string(to_string(c.window.profile)));
    r.set("noise", c.noise);
    r.set("seed", std::to_string(c.seed));

    if (setup.state.kind() == EmitterKind::GaussianPure)
        r.set("emitter_size_nm", std::sqrt(projected_variance(setup.state, res.pdm.meta.r_hat)) * 1e9);

    auto const recon = reconstruct_report(res.pdm, c.width_convention);
    for (auto const& [k, v] : recon.entries())
        r.set(k, v);
    res.coherence = coherence_width(res.pdm);

    res.profile = temporal_autocorrelation(res.pdm, c.temporal);
    auto const st = envelope_stats(*res.profile);
    auto const v_eff = effective_group_velocity(res.pdm, setup.model);
    r.set("time_step_fs", res.profile->time.step * 1e15);
    r.set("time_window_fs", res.profile->window() * 1e15);
    r.set("envelope_fwhm_fs", st.fwhm * 1e15);
    r.set("envelope_std_fs", st.std * 1e15);
    r.set("envelope_energy", st.energy);
    {
        auto const g = g1_series(*res.profile);
        std::vector<double> mag(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
            mag[k] = std::abs(g[k]);
        double g1w = std::numeric_limits<double>::quiet_NaN();
        try
        {
            g1w = fwhm(res.profile->time, mag);
        }
        catch (Error const&)
        {
        }
        r.set("g1_fwhm_fs", g1w * 1e15);
    }
    r.set("spectral_rms_width", spectral_rms_width(res.pdm));
    r.set("effective_group_velocity", v_eff);
    double const dx = v_eff * st.std;
    r.set("delta_x_shw_nm", dx * 1e9);
    if (setup.state.kind() == EmitterKind::GaussianPure)
    {
        double const s = std::sqrt(projected_variance(setup.state, res.pdm.meta.r_hat));
        double const dp = constants::hbar / (2.0 * s);
        r.set("delta_p", dp);
        r.set("uncertainty_ratio", uncertainty_check(dx, dp));
    }
    else if (auto const* gs = setup.state.get<GaussianSchell>())
    {
        auto const u = schell_uncertainties(gs->sigma_x, gs->xi);
        r.set("delta_p", u.total);
        r.set("delta_p_coherent", u.coherent);
        r.set("uncertainty_ratio", uncertainty_check(dx, u.total));
    }

    append_interaction_window(
        r, c.window.lambda_0, delta_lambda_of(c.window), setup.model, setup.kin.beta, c.interaction_length);
    return res;
}

void append_interaction_window(Report& r,
                               double lambda_0,
                               double delta_lambda,
                               DispersionModel const& model,
                               double beta,
                               std::optional<double> interaction_length)
{
    auto const win = interaction_length_window(lambda_0, delta_lambda, model, beta, interaction_length);
    r.set("interaction_l_min_um", win.l_min * 1e6);
    r.set("interaction_l_max_um", win.unbounded ? std::string("unbounded") : fmt(win.l_max * 1e6, 17));
    if (win.valid)
    {
        r.set("interaction_length_um", *interaction_length * 1e6);
        r.set("interaction_length_valid", *win.valid ? "yes" : "no");
    }
}

std::string format_report(Report const& report)
{
    std::string out;
    for (auto const& [k, v] : report.entries())
        out += k + " = " + v + "\n";
    return out;
}

std::string build_manifest(std::vector<std::filesystem::path> const& files,
                           std::filesystem::path const& base)
{
    std::string out = "# absolute power scale is factor-level; shapes and widths are exact\n";
    for (auto const& f : files)
    {
        auto const rel = std::filesystem::relative(f, base).generic_string();
        out += rel + " " + std::to_string(std::filesystem::file_size(f)) + " " + sha256_file(f) + "\n";
    }
    return out;
}

std::string envelope_columns(ShockwaveProfile const& profile)
{
    auto const g = g1_series(profile);
    std::string out = "# t[s] P[W] |g1|\n";
    char buf[96];
    for (std::size_t k = 0; k < profile.time.count; ++k)
    {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", profile.time.value(k), profile.power[k],
                      std::abs(g[k]));
        out += buf;
    }
    return out;
}

std::string spectrum_columns(PhotonDensityMatrix const& pdm)
{
    auto const s = power_spectrum(pdm);
    std::string out = "# omega[rad/s] S[J/(rad/s)^2]\n";
    char buf[64];
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", pdm.omega.value(i), s[i]);
        out += buf;
    }
    return out;
}

RunSummary run_scenario(ScenarioConfig c, RunOptions const& options)
{
    if (options.seed)
        c.seed = *options.seed;
    if (options.format)
        c.format = *options.format;

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec)
        fail(ErrorCode::IoError, "cannot create " + options.out_dir.string() + ": " + ec.message());

    RunSummary summary;
    if (!c.outputs.empty())
    {
        auto const res = simulate(c);
        summary.report = res.report;
        for (auto const& artifact : c.outputs)
        {
            auto const path = options.out_dir / output_name(c, artifact, c.format);
            if (artifact == "density_matrix")
                write_matrix(path, to_matrix_file(res.pdm), c.format);
            else if (artifact == "profile")
                write_matrix(path, to_matrix_file(*res.profile), c.format);
            else if (artifact == "envelope")
                write_file(path, envelope_columns(*res.profile));
            else if (artifact == "spectrum")
                write_file(path, spectrum_columns(res.pdm));
            else
                write_file(path, format_report(res.report));
            summary.files.push_back(path);
        }
    }
    summary.manifest = options.out_dir / (c.id + ".manifest");
    write_file(summary.manifest, build_manifest(summary.files, options.out_dir));
    return summary;
}

//---------------------------------------------------------------------------//

std::vector<std::string> const& export_formats()
{
    static std::vector<std::string> const tags = {"binary", "columns", "magnitude", "text"};
    return tags;
}

std::filesystem::path export_plotdata(std::filesystem::path const& artifact,
                                      std::string_view format,
                                      std::filesystem::path const& out_dir)
{
    auto const& tags = export_formats();
    if (std::find(tags.begin(), tags.end(), format) == tags.end())
        fail(ErrorCode::ConfigError,
             "unknown export format '" + std::string(format) + "' (supported: " + join(tags) + ")");

    auto const file = read_matrix(artifact);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        fail(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
    auto stem = artifact.stem().string();
    auto const n = file.data.rows();

    if (format == "text" || format == "binary")
    {
        auto const fmt_tag = matrix_format_from_string(format);
        auto const out = out_dir / (stem + std::string(file_extension(fmt_tag)));
        if (std::filesystem::exists(out) && std::filesystem::equivalent(out, artifact))
            fail(ErrorCode::IoError, "export would overwrite its input " + artifact.string());
        write_matrix(out, file, fmt_tag);
        return out;
    }
    if (format == "magnitude")
    {
        auto const out = out_dir / (stem + ".magnitude.dat");
        std::string text = "# |" + std::string(file.meta.get("kind")) + "| rows, axis " + file.meta.get("axis")
                           + "[" + file.meta.get("axis_unit") + "] start " + file.meta.get("axis_start")
                           + " step " + file.meta.get("axis_step") + ", units " + file.meta.get("units") + "\n";
        char buf[32];
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index j = 0; j < n; ++j)
            {
                std::snprintf(buf, sizeof buf, j ? " %.17g" : "%.17g", std::abs(file.data(i, j)));
                text += buf;
            }
            text += '\n';
        }
        write_file(out, text);
        return out;
    }

    // columns
    auto const& kind = file.meta.get("kind");
    auto const out = out_dir / (stem + ".columns.dat");
    if (kind == "photon_density_matrix")
    {
        write_file(out, spectrum_columns(pdm_from_matrix_file(file)));
        return out;
    }
    if (kind != "temporal_autocorrelation")
        fail(ErrorCode::FormatError, "cannot make plot columns from '" + kind + "'");
    double const t0 = file.meta.number("axis_start");
    double const dt = file.meta.number("axis_step");
    bool const periodic = file.meta.number("padded_size") == static_cast<double>(n);
    double total = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        total += file.data(k, k).real();
    std::string text = "# t[s] P[W] |g1|\n";
    char buf[96];
    Eigen::Index const half = n / 2;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        // lag sum of C(t + tau, t) with tau = t_k - t_center
        Eigen::Index const lag = k - half;
        std::complex<double> sum{};
        for (Eigen::Index l = 0; l < n; ++l)
        {
            Eigen::Index a = l + lag;
            if (periodic)
                a = ((a % n) + n) % n;
            else if (a < 0 || a >= n)
                continue;
            sum += file.data(a, l);
        }
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", t0 + static_cast<double>(k) * dt,
                      file.data(k, k).real(), total > 0.0 ? std::abs(sum) / total : 0.0);
        text += buf;
    }
    write_file(out, text);
    return out;
}
} // namespace cqcl
