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
#include "cqcl_cli/cli_app.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqcl/constants.hpp"
#include "cqcl/error.hpp"
#include "cqcl/matrix_io.hpp"
#include "cqcl/medium.hpp"
#include "cqcl/scenario.hpp"

namespace cqcl::cli
{
namespace
{
int exit_code_for(Error const& err)
{
    switch (category(err.code()))
    {
        case ErrorCategory::Config: return exit_config;
        case ErrorCategory::Io: return exit_io;
        case ErrorCategory::Physics: return exit_physics;
    }
    return exit_physics;
}

ScenarioConfig resolve_config(std::string const& path, std::string const& preset)
{
    if (!path.empty() && !preset.empty())
        fail(ErrorCode::ConfigError, "give either a config file or --preset, not both");
    if (!preset.empty())
        return load_preset(preset);
    if (path.empty())
        fail(ErrorCode::ConfigError, "a config file or --preset is required");
    return load_config(path);
}

struct Options
{
    std::string config;
    std::string preset;
    std::string out_dir = ".";
    std::string format;
    std::optional<std::uint64_t> seed;
    std::string artifact;
    std::string convention = "sigma";
    std::optional<double> interaction_length_um;
    double delta_lambda_nm = 300.0;
    std::string preset_name;
};
} // namespace

int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum Cherenkov shockwave simulator", "cqcl"};
    app.require_subcommand(1);
    Options o;

    auto* simulate_cmd = app.add_subcommand("simulate", "Run a scenario and write its artifacts");
    simulate_cmd->add_option("config", o.config, "Scenario file");
    simulate_cmd->add_option("--preset", o.preset, "Bundled preset name");
    simulate_cmd->add_option("--seed", o.seed, "Noise seed (overrides the config)");
    simulate_cmd->add_option("--out-dir", o.out_dir, "Output directory");
    simulate_cmd->add_option("--format", o.format, "Matrix format: text or binary");

    auto* reconstruct_cmd
        = app.add_subcommand("reconstruct", "Estimate the emitter size from a stored density matrix");
    reconstruct_cmd->add_option("matrix", o.artifact, "Density matrix file (text or binary)")->required();
    reconstruct_cmd->add_option("--out-dir", o.out_dir, "Output directory");
    reconstruct_cmd->add_option("--width-convention", o.convention, "sigma or fwhm")
        ->check(CLI::IsMember({"sigma", "fwhm"}));
    reconstruct_cmd->add_option("--interaction-length-um", o.interaction_length_um,
                                "Interaction length to check against the validity window");
    reconstruct_cmd->add_option("--delta-lambda-nm", o.delta_lambda_nm, "Detection bandwidth");
    reconstruct_cmd->add_option("--seed", o.seed, "Unused; accepted for uniformity");
    reconstruct_cmd->add_option("--format", o.format, "Unused; accepted for uniformity");

    auto* validate_cmd = app.add_subcommand("validate", "Lint a scenario without running it");
    validate_cmd->add_option("config", o.config, "Scenario file");
    validate_cmd->add_option("--preset", o.preset, "Bundled preset name");

    auto* presets_cmd = app.add_subcommand("presets", "Bundled scenario presets");
    presets_cmd->require_subcommand(1);
    auto* presets_list = presets_cmd->add_subcommand("list", "List preset names");
    auto* presets_show = presets_cmd->add_subcommand("show", "Print a preset");
    presets_show->add_option("name", o.preset_name)->required();

    auto* export_cmd = app.add_subcommand("export", "Convert a stored matrix to plot data");
    export_cmd->add_option("artifact", o.artifact, "Matrix file")->required();
    export_cmd->add_option("--format", o.format, "text, binary, columns or magnitude")->required();
    export_cmd->add_option("--out-dir", o.out_dir, "Output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        err << "cqcl: " << e.what() << "\n";
        return exit_config;
    }

    try
    {
        if (*simulate_cmd)
        {
            auto config = resolve_config(o.config, o.preset);
            RunOptions ro;
            ro.out_dir = o.out_dir;
            ro.seed = o.seed;
            if (!o.format.empty())
                ro.format = matrix_format_from_string(o.format);
            auto const summary = run_scenario(std::move(config), ro);
            for (auto const& f : summary.files)
                out << f.string() << "\n";
            out << summary.manifest.string() << "\n";
            return exit_ok;
        }
        if (*reconstruct_cmd)
        {
            auto const pdm = pdm_from_matrix_file(read_matrix(o.artifact));
            auto report = reconstruct_report(
                pdm, o.convention == "fwhm" ? WidthConvention::Fwhm : WidthConvention::Sigma);
            auto const registry = MaterialRegistry::builtin();
            if (registry.contains(pdm.meta.material))
            {
                append_interaction_window(report,
                                          constants::wavelength_from_omega(pdm.meta.omega_0),
                                          o.delta_lambda_nm * 1e-9,
                                          registry.get(pdm.meta.material),
                                          pdm.meta.beta,
                                          o.interaction_length_um
                                              ? std::optional<double>(*o.interaction_length_um * 1e-6)
                                              : std::nullopt);
            }
            auto const text = format_report(report);
            std::filesystem::create_directories(o.out_dir);
            auto const path = std::filesystem::path(o.out_dir)
                              / (std::filesystem::path(o.artifact).stem().string() + ".report.txt");
            write_file(path, text);
            out << text;
            return exit_ok;
        }
        if (*validate_cmd)
        {
            std::vector<Diagnostic> diags;
            try
            {
                diags = validate_config(resolve_config(o.config, o.preset));
            }
            catch (Error const& e)
            {
                if (category(e.code()) != ErrorCategory::Config)
                    throw;
                diags.push_back({Diagnostic::Severity::Error, e.what()});
            }
            for (auto const& d : diags)
                (d.severity == Diagnostic::Severity::Error ? err : out)
                    << (d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ") << d.message << "\n";
            if (has_errors(diags))
                return exit_config;
            out << "ok\n";
            return exit_ok;
        }
        if (*presets_list)
        {
            for (auto const& name : preset_names())
                out << name << "\n";
            return exit_ok;
        }
        if (*presets_show)
        {
            out << preset_text(o.preset_name);
            return exit_ok;
        }
        if (*export_cmd)
        {
            out << export_plotdata(o.artifact, o.format, o.out_dir).string() << "\n";
            return exit_ok;
        }
    }
    catch (Error const& e)
    {
        err << "cqcl: " << e.what() << "\n";
        return exit_code_for(e);
    }
    catch (std::filesystem::filesystem_error const& e)
    {
        err << "cqcl: IoError: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}
} // namespace cqcl::cli
