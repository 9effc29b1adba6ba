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
#pragma once

#include <cpd/construct.hpp>
#include <cpd/expr.hpp>
#include <cpd/mesh.hpp>
#include <cpd/report.hpp>
#include <cpd/transnormal.hpp>

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cpd {

struct AmbientSpec {
    std::string kind = "euclidean"; // euclidean | warped
    int dim = 3;
    std::string rho = "1";          // expression in t, warped only
    std::optional<Interval> interval;
};

struct FieldSpec {
    std::string kind = "constant"; // constant | radial | warped
    std::vector<double> components{0.0, 0.0, 1.0};
};

struct CurveSpec {
    std::string kind;          // circle | ellipse | line | parametric
    double radius = 1.0;
    double a = 2.0, b = 1.0;   // ellipse semi-axes
    std::string x, y;          // parametric, in s
    Interval domain{0.0, 1.0};
    double orientation = 1.0;
};

struct ProfileSpec {
    std::string named;         // catenoid | cylinder | plane, or empty
    std::optional<CurveSpec> gamma;
    std::string beta_kind;     // catenary | line | circle_arc | expression
    std::string f, g;          // expression profile, in t
    double beta_radius = 1.0;
    Interval t_domain{-1.0, 1.0};
};

struct TransnormalSceneSpec {
    std::string base_polyline_path;
    std::optional<CurveSpec> base_curve;
    std::string b = "1";
    double s0 = 0.0;
    double tube = 0.5;
    std::string side = "signed";
    std::vector<Interval> domain;
};

struct GraphSpec {
    std::string F;
    std::vector<Interval> domain;
};

struct CheckRequest {
    std::string name;
    std::optional<double> tol;
    std::optional<double> target;
};

struct OutputSpec {
    std::string mesh_path;
    std::string report_path;
    int grid_u = 51;
    int grid_v = 51;
    bool allow_holes = false;
};

/// Scene file contents (YAML). Exactly one of the constructions is set.
struct SceneConfig {
    std::string source;
    std::string base_dir;
    AmbientSpec ambient;
    std::optional<FieldSpec> field;
    std::optional<ProfileSpec> profile;
    std::optional<TransnormalSceneSpec> transnormal;
    std::optional<GraphSpec> graph;
    std::vector<CheckRequest> checks;
    OutputSpec output;
};

/// Throws Error(Parse) naming the offending field.
SceneConfig parse_scene(const std::string& yaml_text, const std::string& base_dir = ".",
                        const std::string& source = "<scene>");
SceneConfig load_scene(const std::string& path);

/// The surface a scene describes, plus what its checks need.
struct BuiltScene {
    std::string name;
    Immersion surface;
    ConformalField field;
    WarpedProduct ambient;
    std::optional<GraphFunction> graph;
    ScalarFn b;                                 // transnormal scenes
    std::shared_ptr<const MonotoneMap> map;     // transnormal scenes
    CoordinateMap to_obj;                       // ambient -> OBJ coordinates
};

BuiltScene build_scene(const SceneConfig& cfg);

/// Command-line overrides shared by the subcommands.
struct RunOverrides {
    std::optional<std::pair<int, int>> grid;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<std::string> report;
};

/// Runs the requested checks ("theorem" expands to all five conditions).
ResidualReport run_checks(const SceneConfig& cfg, const BuiltScene& scene, const RunOverrides& ov = {});

/// Exit codes: 0 all non-skipped checks pass, 1 a check failed, 2 input error.
int run_generate(const std::string& scene_path, const RunOverrides& ov, std::ostream& out, std::ostream& err);
int run_verify(const std::string& scene_path, const RunOverrides& ov, std::ostream& out, std::ostream& err);
int run_transnormal(const std::string& scene_path, const RunOverrides& ov, int levels, std::ostream& out,
                    std::ostream& err);

struct ProfileArgs {
    double H = 0.0;
    double kappa = 1.0;
    double f0 = 2.0;
    double fp0 = 0.0;
    double t_max = 1.0;
    double step = 1e-3;
    std::string out;
};

int run_profile(const ProfileArgs& args, std::ostream& out, std::ostream& err);

} // namespace cpd
