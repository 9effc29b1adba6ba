/*
 * Copyright 2026 The cpdgeo Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#include <cpd/scene.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

// Accepts "51" or "51x41" (also "51,41").
std::optional<std::pair<int, int>> parse_grid(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    const auto sep = text.find_first_of("x,");
    try {
        std::size_t used = 0;
        const int nu = std::stoi(text.substr(0, sep), &used);
        const int nv = sep == std::string::npos ? nu : std::stoi(text.substr(sep + 1));
        if (nu < 2 || nv < 2)
            throw std::invalid_argument("grid");
        return std::pair<int, int>{nu, nv};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected N or NUxNV with N >= 2, got '" + text + "'");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hypersurfaces with a canonical principal direction: construction and verification"};
    app.require_subcommand(1);

    std::string scene, grid;
    double tol = 0.0;
    std::string out, report;
    int levels = 5;

    auto add_common = [&](CLI::App* sub, const std::string& out_help) {
        sub->add_option("scene", scene, "Scene file (YAML)")->required();
        sub->add_option("--grid", grid, "Grid size N or NUxNV");
        sub->add_option("--tol", tol, "Tolerance override for every check")->check(CLI::PositiveNumber);
        sub->add_option("--report", report, "Report path ('-' for standard output)");
        if (!out_help.empty())
            sub->add_option("--out", out, out_help);
    };

    auto* gen = app.add_subcommand("generate", "Build the surface, write the OBJ mesh and the residual report");
    add_common(gen, "Mesh path");
    auto* ver = app.add_subcommand("verify", "Run the requested checks and write the residual report");
    add_common(ver, "");
    auto* tn = app.add_subcommand("transnormal", "Eikonal and level-set checks for a transnormal scene");
    add_common(tn, "Level-set CSV path");
    tn->add_option("--levels", levels, "Number of level sets to extract")->check(CLI::PositiveNumber);

    cpd::ProfileArgs pa;
    auto* prof = app.add_subcommand("profile", "Integrate the constant mean curvature profile ODE");
    prof->add_option("--H", pa.H, "Target mean curvature (trace convention)");
    prof->add_option("--kappa", pa.kappa, "Curvature of the base circle");
    prof->add_option("--f0", pa.f0, "Initial normal offset f(0)");
    prof->add_option("--fp0", pa.fp0, "Initial slope f'(0)");
    prof->add_option("--t-max", pa.t_max, "Integrate over [-t_max, t_max]");
    prof->add_option("--step", pa.step, "RK4 step")->check(CLI::PositiveNumber);
    prof->add_option("--out", pa.out, "CSV path (t,f,fp,g,gp)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*prof)
        return cpd::run_profile(pa, std::cout, std::cerr);

    cpd::RunOverrides ov;
    try {
        ov.grid = parse_grid(grid);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (tol > 0)
        ov.tol = tol;
    if (!out.empty())
        ov.out = out;
    if (!report.empty())
        ov.report = report;

    if (*gen)
        return cpd::run_generate(scene, ov, std::cout, std::cerr);
    if (*ver)
        return cpd::run_verify(scene, ov, std::cout, std::cerr);
    return cpd::run_transnormal(scene, ov, levels, std::cout, std::cerr);
}
