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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqcl/emitter.hpp"
#include "cqcl/matrix_io.hpp"
#include "cqcl/medium.hpp"
#include "cqcl/radiation.hpp"
#include "cqcl/reconstruction.hpp"

namespace cqcl
{
struct EmitterSpec
{
    std::string type = "gaussian"; // gaussian, point, axial_gaussian, gaussian_schell, pinem, empirical
    std::optional<double> size;    // spherical 1-sigma [m]
    std::optional<double> energy_spread_ev;
    double sigma_par = 0.0;
    double sigma_perp = 0.0;
    double sigma_x = 0.0;
    double xi = 0.0;
    double coupling = 0.0;
    double coupling_phase = 0.0;
    double modulation_frequency = 0.0; // Omega / 2 pi [Hz]
    double envelope_sigma = 0.0;
    double transverse_sigma = 0.0;
    std::string phase_rule = "quadratic";
    double phase_b = 0.0;
    std::vector<double> phases;
    int sideband_cap = default_sideband_cap;
    std::filesystem::path density_file;
};

struct ScenarioConfig
{
    std::string id;
    std::vector<std::string> outputs;
    MatrixFormat format = MatrixFormat::Text;
    std::uint64_t seed = 0;
    double noise = 0.0;

    EmitterSpec emitter;
    double kinetic_energy_ev = 1e6;
    double rest_energy_ev = 510998.95;
    std::string material = "fused_silica";
    std::optional<std::filesystem::path> material_file;
    WindowSpec window;
    TemporalOptions temporal;
    WidthConvention width_convention = WidthConvention::Sigma;
    std::optional<double> interaction_length;

    std::string source;
    //! "section.key" -> line, for diagnostics
    std::map<std::string, int> lines;

    int line_of(std::string const& field) const;
};

//! Artifact names accepted in [scenario] outputs.
std::vector<std::string> const& known_outputs();

ScenarioConfig parse_config(std::string_view text, std::string source);
ScenarioConfig load_config(std::filesystem::path const& path);

std::vector<std::string> preset_names();
std::string_view preset_text(std::string_view name);
ScenarioConfig load_preset(std::string_view name);

struct Diagnostic
{
    enum class Severity
    {
        Error,
        Warning,
    };
    Severity severity = Severity::Error;
    std::string message;
};

//! Schema and physics lint without running the simulation.
std::vector<Diagnostic> validate_config(ScenarioConfig const& config);
std::vector<Diagnostic> validate_config_text(std::string_view text, std::string source);
bool has_errors(std::vector<Diagnostic> const& diags);

//! Resolved physics objects for a configuration.
struct ScenarioSetup
{
    DispersionModel model;
    ParticleKinematics kin;
    ElectronState state;
    DetectionWindow window;
};

ScenarioSetup build_setup(ScenarioConfig const& config);

using Report = MatrixMetadata;

struct ScenarioResult
{
    PhotonDensityMatrix pdm;
    std::optional<ShockwaveProfile> profile;
    std::optional<CoherenceResult> coherence;
    Report report;
};

//! Runs the physics chain in memory.
ScenarioResult simulate(ScenarioConfig const& config);

struct RunOptions
{
    std::filesystem::path out_dir = ".";
    std::optional<MatrixFormat> format;
    std::optional<std::uint64_t> seed;
};

struct RunSummary
{
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
    Report report;
};

RunSummary run_scenario(ScenarioConfig config, RunOptions const& options);

//! "key = value" lines.
std::string format_report(Report const& report);

//! "path size sha256" per line; paths relative to the manifest directory.
std::string build_manifest(std::vector<std::filesystem::path> const& files,
                           std::filesystem::path const& base);

//! Reconstruction from a stored density matrix.
Report reconstruct_report(PhotonDensityMatrix const& pdm, WidthConvention convention);

//! Adds interaction-length bounds (and a verdict when a length is given).
void append_interaction_window(Report& report,
                               double lambda_0,
                               double delta_lambda,
                               DispersionModel const& model,
                               double beta,
                               std::optional<double> interaction_length);

/*!
 * Plot columns: "# t[s] P[W] |g1|" for a profile,
 * "# omega[rad/s] S[J/(rad/s)^2]" for the power spectrum.
 */
std::string envelope_columns(ShockwaveProfile const& profile);
std::string spectrum_columns(PhotonDensityMatrix const& pdm);

std::vector<std::string> const& export_formats();

//! Converts a stored matrix artifact; returns the written file.
std::filesystem::path export_plotdata(std::filesystem::path const& artifact,
                                      std::string_view format,
                                      std::filesystem::path const& out_dir);
} // namespace cqcl
