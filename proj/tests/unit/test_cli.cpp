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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "cqcl/matrix_io.hpp"
#include "cqcl_cli/cli_app.hpp"
#include "fixtures.hpp"

using namespace cqcl;
using namespace cqcl::test;

namespace
{
struct Outcome
{
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "cqcl");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::filesystem::path write_config(std::filesystem::path const& dir, std::string const& name, std::string const& extra)
{
    auto const path = dir / name;
    std::ofstream(path) << "[scenario]\nid = " << path.stem().string()
                        << "\noutputs = density_matrix report\n\n[emitter]\ntype = gaussian\nsize_nm = 254\n\n"
                           "[detection]\nn = 128\n"
                        << extra;
    return path;
}
} // namespace

TEST_CASE("presets list and show")
{
    auto const list = invoke({"presets", "list"});
    CHECK(list.code == cli::exit_ok);
    for (auto const* name : {"fig2-coherent", "fig2-incoherent", "fig3d", "fig3e", "fig4"})
        CHECK(list.out.find(name) != std::string::npos);
    auto const show = invoke({"presets", "show", "fig3d"});
    CHECK(show.code == cli::exit_ok);
    CHECK(show.out.find("size_nm = 254") != std::string::npos);
    CHECK(invoke({"presets", "show", "fig0"}).code == cli::exit_config);
}

TEST_CASE("validate")
{
    auto const dir = scratch_dir("cli-validate");
    CHECK(invoke({"validate", "--preset", "fig4"}).code == cli::exit_ok);
    CHECK(invoke({"validate", write_config(dir, "ok.cfg", "").string()}).code == cli::exit_ok);
    auto const odd = invoke({"validate", write_config(dir, "odd.cfg", "[kinematics]\nkinetic_energy_ev = 1e5\n").string()});
    CHECK(odd.code == cli::exit_config);
    CHECK(odd.err.find("threshold") != std::string::npos);
    CHECK(invoke({"validate", (dir / "missing.cfg").string()}).code == cli::exit_io);
}

TEST_CASE("simulate, reconstruct and export")
{
    auto const dir = scratch_dir("cli-run");
    auto const cfg = write_config(dir, "run.cfg", "");
    auto const sim = invoke({"simulate", cfg.string(), "--out-dir", (dir / "out").string(), "--format", "binary"});
    REQUIRE(sim.code == cli::exit_ok);
    auto const density = dir / "out" / "run.density.bin";
    REQUIRE(std::filesystem::exists(density));
    CHECK(std::filesystem::exists(dir / "out" / "run.manifest"));

    auto const rec = invoke({"reconstruct", density.string(), "--out-dir", (dir / "rec").string(),
                          "--interaction-length-um", "5"});
    CHECK(rec.code == cli::exit_ok);
    auto const report = read_file(dir / "rec" / "run.density.report.txt");
    CHECK(report.find("size_estimate_nm") != std::string::npos);
    CHECK(report.find("interaction_length_valid = yes") != std::string::npos);

    CHECK(invoke({"reconstruct", density.string(), "--width-convention", "fwhm", "--out-dir", (dir / "rec").string()}).code
          == cli::exit_ok);
    CHECK(invoke({"reconstruct", density.string(), "--width-convention", "half", "--out-dir", (dir / "rec").string()}).code
          == cli::exit_config);

    auto const ex = invoke({"export", density.string(), "--format", "magnitude", "--out-dir", (dir / "plot").string()});
    CHECK(ex.code == cli::exit_ok);
    auto const bad = invoke({"export", density.string(), "--format", "svg", "--out-dir", (dir / "plot").string()});
    CHECK(bad.code == cli::exit_config);
    CHECK(bad.err.find("columns") != std::string::npos);

    CHECK(invoke({"simulate", "--preset", "fig3d", "--out-dir", (dir / "p").string()}).code == cli::exit_ok);
}

TEST_CASE("exit codes")
{
    auto const dir = scratch_dir("cli-codes");
    CHECK(invoke({}).code == cli::exit_config);
    CHECK(invoke({"frobnicate"}).code == cli::exit_config);
    CHECK(invoke({"simulate", write_config(dir, "odd.cfg", "").string(), "--format", "jpeg"}).code == cli::exit_config);
    {
        auto const path = write_config(dir, "bad.cfg", "");
        std::ofstream(path, std::ios::app) << "n = 127\n";
        CHECK(invoke({"simulate", path.string()}).code == cli::exit_config);
    }
    // the lint is skipped by simulate; the threshold failure surfaces as a physics error
    auto const slow = write_config(dir, "slow.cfg", "[kinematics]\nkinetic_energy_ev = 1e5\n");
    auto const phys = invoke({"simulate", slow.string(), "--out-dir", (dir / "o").string()});
    CHECK(phys.code == cli::exit_physics);
    CHECK(phys.err.find("BelowThreshold") != std::string::npos);

    std::ofstream(dir / "plain-file") << "x";
    auto const io = invoke({"simulate", write_config(dir, "io.cfg", "").string(), "--out-dir",
                         (dir / "plain-file" / "sub").string()});
    CHECK(io.code == cli::exit_io);
    CHECK(invoke({"reconstruct", (dir / "none.bin").string()}).code == cli::exit_io);
}
