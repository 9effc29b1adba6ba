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
#include "fixtures.hpp"

#include <cpd/mesh.hpp>
#include <cpd/scene.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef CPD_SOURCE_DIR
#define CPD_SOURCE_DIR "."
#endif

using namespace cpd;
using namespace cpd::test;
namespace fs = std::filesystem;

namespace {

std::string parse_error(const std::string& yaml)
{
    try {
        parse_scene(yaml, ".", "test.yaml");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        return e.what();
    }
    return "";
}

std::string scene(const std::string& name) { return std::string(CPD_SOURCE_DIR) + "/scenes/" + name; }

struct TempDir {
    fs::path path;
    fs::path old;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("cpd_cli_" + tag)), old(fs::current_path())
    {
        fs::remove_all(path);
        fs::create_directories(path);
        fs::current_path(path);
    }
    ~TempDir()
    {
        fs::current_path(old);
        fs::remove_all(path);
    }
};

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("scene parsing: valid scenes")
{
    const SceneConfig c = load_scene(scene("catenoid.yaml"));
    CHECK(c.profile.has_value());
    CHECK(c.profile->named == "catenoid");
    CHECK(c.output.grid_u == 51);
    CHECK(c.checks.size() == 2);

    const SceneConfig t = load_scene(scene("transnormal_polyline.yaml"));
    REQUIRE(t.transnormal.has_value());
    CHECK(fs::exists(t.transnormal->base_polyline_path));

    const SceneConfig g = parse_scene("construction:\n  graph: {F: \"x*y\", domain: [[0, 1], [0, 2]]}\n", ".");
    REQUIRE(g.graph.has_value());
    CHECK(g.checks.size() == 1);
    CHECK(g.checks[0].name == "theorem");

    const SceneConfig w = parse_scene(
        "ambient: {kind: warped, dim: 3, rho: cosh}\nconstruction:\n  graph: {F: \"x\", domain: [[0, 1], [0, 1]]}\n",
        ".");
    CHECK(w.ambient.rho == "cosh(t)");
}

TEST_CASE("scene parsing: diagnostics name the field")
{
    CHECK(parse_error("construction:\n  transnormal:\n    base_curve: {kind: circle}\n    b: \"1 + * s\"\n"
                      "    domain: [[0, 1], [0, 1]]\n")
              .find("construction.transnormal.b (line 4): column 5") != std::string::npos);
    CHECK(parse_error("construction: {graph: {F: x, domain: [[0, 1], [0, 1]]}}\nbogus: 1\n").find("scene.bogus") !=
          std::string::npos);
    CHECK(parse_error("ambient: {kind: euclidean}\n").find("construction") != std::string::npos);
    CHECK(parse_error("construction:\n  graph: {F: x, domain: [[0, 1], [0, 1]]}\n  profile: {named: catenoid}\n")
              .find("exactly one") != std::string::npos);
    CHECK(parse_error("construction:\n  transnormal: {base_polyline_path: missing.csv, b: \"1\", domain: "
                      "[[0, 1], [0, 1]]}\n")
              .find("does not exist") != std::string::npos);
    CHECK(parse_error("construction: {graph: {F: x, domain: [[1, 0], [0, 1]]}}\n").find("lo < hi") !=
          std::string::npos);
    CHECK(parse_error("construction: {graph: {F: x, domain: [[0, 1], [0, 1]]}}\nchecks: [nope]\n")
              .find("unknown check") != std::string::npos);
    CHECK(parse_error("construction: [\n").find("test.yaml:") != std::string::npos);
}

TEST_CASE("OBJ export")
{
    const Immersion sq([](const Vec& u) { return vec3(u[0], u[1], 0.0); }, {{0, 1}, {0, 1}},
                       WarpedProduct::euclidean(3));
    const MeshGrid m = sample_mesh(sq, 2, 2);
    const std::string text = obj_text(m);
    std::istringstream is(text);
    int v = 0, vn = 0, f = 0;
    for (std::string line; std::getline(is, line);) {
        v += line.rfind("v ", 0) == 0;
        vn += line.rfind("vn ", 0) == 0;
        f += line.rfind("f ", 0) == 0;
    }
    CHECK(v == 4);
    CHECK(vn == 4);
    CHECK(f == 2);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text == obj_text(sample_mesh(sq, 2, 2)));

    const MeshGrid cat = sample_mesh(catenoid(), 51, 51);
    CHECK(cat.points.size() == 2601);
    CHECK(cat.complete());
}

TEST_CASE("OBJ export refuses holes unless allowed")
{
    const Immersion holey(
        [](const Vec& u) {
            if (u[0] > 0.4 && u[0] < 0.6 && u[1] > 0.4 && u[1] < 0.6)
                throw Error(ErrorKind::Domain, "hole");
            return vec3(u[0], u[1], 0.0);
        },
        {{0, 1}, {0, 1}}, WarpedProduct::euclidean(3));
    const MeshGrid m = sample_mesh(holey, 11, 11, false);
    CHECK(!m.complete());
    try {
        obj_text(m);
        FAIL("holes must be rejected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Export);
        CHECK(std::string(e.what()).find("(5,5)") != std::string::npos);
    }
    CHECK_NOTHROW(obj_text(m, true));
}

TEST_CASE("generate: catenoid and plane scenes")
{
    TempDir dir("generate");
    std::ostringstream out, err;
    RunOverrides ov;
    ov.out = "cat.obj";
    ov.report = "cat.txt";
    CHECK(run_generate(scene("catenoid.yaml"), ov, out, err) == 0);
    const std::string obj = slurp("cat.obj");
    CHECK(std::count(obj.begin(), obj.end(), '\n') > 2601);
    std::istringstream is(obj);
    int v = 0, f = 0;
    for (std::string line; std::getline(is, line);)
        v += line.rfind("v ", 0) == 0, f += line.rfind("f ", 0) == 0;
    CHECK(v == 2601);
    CHECK(f == 5000);
    const std::string rep = slurp("cat.txt");
    for (const char* name : {"principal_direction", "angle_constancy", "t_geodesic", "grad_h_on_levels",
                             "grad_f_on_levels"})
        CHECK(rep.find(std::string(name) + "\t") != std::string::npos);
    CHECK(rep.find("\tfail") == std::string::npos);

    std::ostringstream o2, e2;
    RunOverrides pv;
    pv.out = "plane.obj";
    pv.report = "plane.txt";
    CHECK(run_generate(scene("plane.yaml"), pv, o2, e2) == 0);
    CHECK(slurp("plane.txt").find("mean_curvature\t0.000000000e+00") != std::string::npos);
}

TEST_CASE("exit codes: input errors and check failures")
{
    TempDir dir("exit");
    std::ostringstream out, err;
    CHECK(run_generate(scene("bad_b.yaml"), {}, out, err) == 2);
    CHECK(err.str().find("construction.transnormal.b") != std::string::npos);
    CHECK(run_verify("no_such_file.yaml", {}, out, err) == 2);

    std::ofstream("neg.yaml") << "construction:\n  graph: {F: \"x + 0.1*y^2\", domain: [[-2, 2], [-2, 2]]}\n"
                                 "checks: [principal_direction]\n";
    std::ostringstream o2, e2;
    RunOverrides ov;
    ov.grid = std::pair<int, int>{15, 15};
    ov.report = "neg.txt";
    CHECK(run_verify("neg.yaml", ov, o2, e2) == 1);
    CHECK(o2.str().find("result: fail") != std::string::npos);
}

TEST_CASE("transnormal subcommand writes level sets")
{
    TempDir dir("transnormal");
    std::ostringstream out, err;
    RunOverrides ov;
    ov.out = "levels.csv";
    ov.report = "tn.txt";
    ov.grid = std::pair<int, int>{21, 21};
    CHECK(run_transnormal(scene("transnormal_circle.yaml"), ov, 3, out, err) == 0);
    CHECK(slurp("levels.csv").rfind("x,y\n", 0) == 0);
    CHECK(slurp("tn.txt").find("eikonal\t") != std::string::npos);
    CHECK(run_transnormal(scene("catenoid.yaml"), ov, 3, out, err) == 2);
}

TEST_CASE("profile subcommand")
{
    TempDir dir("profile");
    auto classify = [](double H, double f0) {
        ProfileArgs a;
        a.H = H;
        a.kappa = 1.0;
        a.f0 = f0;
        a.fp0 = 0.0;
        a.t_max = 4.0;
        a.out = "p.csv";
        std::ostringstream out, err;
        CHECK(run_profile(a, out, err) == 0);
        return out.str();
    };
    CHECK(classify(0.0, 2.0).find("classification: catenoid-type") != std::string::npos);
    CHECK(classify(1.0, 0.0).find("classification: cylinder") != std::string::npos);
    CHECK(classify(1.0, -0.5).find("classification: unduloid") != std::string::npos);
    CHECK(slurp("p.csv").rfind("t,f,fp,g,gp\n", 0) == 0);

    ProfileArgs sphere;
    sphere.H = 2.0;
    sphere.f0 = 0.0;
    sphere.t_max = 3.0;
    std::ostringstream out, err;
    CHECK(run_profile(sphere, out, err) == 0);
    CHECK(out.str().find("warning: profile turned vertical") != std::string::npos);
    CHECK(out.str().find("classification: sphere") != std::string::npos);

    ProfileArgs bad;
    bad.fp0 = 1.5;
    CHECK(run_profile(bad, out, err) == 2);
}
