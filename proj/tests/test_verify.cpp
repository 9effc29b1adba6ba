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

#include <cpd/expr.hpp>
#include <cpd/transnormal.hpp>
#include <cpd/verify.hpp>

#include <doctest.h>

using namespace cpd;
using namespace cpd::test;

namespace {

const ConformalField kAxis = ConformalField::constant(vec3(0, 0, 1));

GraphFunction perturbed()
{
    return graph_function_from_expr(Expr::parse("x + 0.1*y^2", {"x", "y"}), {{-2.0, 2.0}, {-2.0, 2.0}});
}

GraphFunction exp_over_circle()
{
    TransnormalSpec s;
    s.b = [](double v) { return v; };
    s.s0 = 1.0;
    s.base = std::make_shared<CurveDistance>(PlaneCurve::circle(1.0), true, 0.5);
    s.domain = {{0.6, 1.4}, {-0.3, 0.3}};
    return transnormal_from_distance(s);
}

Grid grid_of(const Immersion& m, int n = 21) { return Grid::inset(m.domain(), {n, n}, 0.03); }

} // namespace

TEST_CASE("principal direction check")
{
    const Immersion cat = catenoid();
    CHECK(check_principal_direction(cat, kAxis, grid_of(cat)).max < 1e-5);

    const GraphFunction p = perturbed();
    const WarpedProduct E = WarpedProduct::euclidean(3);
    const Immersion pg = graph_in_warped_product(p, E);
    CHECK(check_principal_direction(pg, ConformalField::warped(E), Grid::inset(p.domain(), {21, 21}, 0.02)).max >
          1e-2);
}

TEST_CASE("radial field is normal to a centred sphere")
{
    // X^T = 0 everywhere: no tangential direction to test, so the entry is skipped.
    const Immersion s = sphere(1.0);
    const ReportEntry e = check_principal_direction(s, ConformalField::radial(Vec::Zero(3)), grid_of(s), 1e-6);
    CHECK(e.skipped());
}

TEST_CASE("principal direction on an off-centre sphere is trivially satisfied")
{
    // Umbilic: every direction is principal.
    Immersion s([](const Vec& u) {
        return vec3(std::sin(u[1]) * std::cos(u[0]) + 0.5, std::sin(u[1]) * std::sin(u[0]), std::cos(u[1]));
    },
                {{0.0, 2.0 * std::numbers::pi}, {0.3, std::numbers::pi - 0.3}}, WarpedProduct::euclidean(3));
    CHECK(check_principal_direction(s, ConformalField::radial(Vec::Zero(3)), grid_of(s), 1e-6).passed());
}

TEST_CASE("angle constancy check")
{
    const Immersion cyl = circular_cylinder();
    CHECK(check_angle_constancy(cyl, kAxis, grid_of(cyl)).max < 1e-6);

    const WarpedProduct E = WarpedProduct::euclidean(3);
    const GraphFunction F = exp_over_circle();
    const Immersion m = graph_in_warped_product(F, E);
    CHECK(check_angle_constancy(m, ConformalField::warped(E), Grid::inset(F.domain(), {21, 21}, 0.02)).max < 1e-4);

    const GraphFunction p = perturbed();
    const Immersion pg = graph_in_warped_product(p, E);
    CHECK(check_angle_constancy(pg, ConformalField::warped(E), Grid::inset(p.domain(), {21, 21}, 0.02)).max > 1e-2);
}

TEST_CASE("T-geodesic check")
{
    const Immersion cat = catenoid();
    CHECK(check_T_geodesic(cat, kAxis, grid_of(cat)).max < 1e-4);

    const WarpedProduct E = WarpedProduct::euclidean(3);
    const GraphFunction plane = graph_function_from_expr(Expr::parse("x", {"x", "y"}), {{-1, 1}, {-1, 1}});
    const Immersion pm = graph_in_warped_product(plane, E);
    CHECK(check_T_geodesic(pm, ConformalField::warped(E), Grid::inset(plane.domain(), {15, 15}, 0.05)).max < 1e-8);

    const ProfileSolution und = cmc_profile_ode(1.0, 1.0, -0.5, 0.0, {-2.0, 2.0}, 1e-3);
    const Immersion u = profile_surface(und);
    CHECK(check_T_geodesic(u, kAxis, grid_of(u, 15)).max < 1e-4);
}

TEST_CASE("gradient norms on level sets")
{
    const WarpedProduct E = WarpedProduct::euclidean(3);
    TransnormalSpec s;
    s.b = [](double) { return 1.0; };
    s.base = std::make_shared<CurveDistance>(PlaneCurve::circle(1.0), true, 0.5);
    s.domain = {{0.6, 1.4}, {-0.3, 0.3}};
    const GraphFunction d = transnormal_from_distance(s);
    const Grid g = Grid::inset(s.domain, {21, 21}, 0.02);
    auto [h1, f1] = check_gradient_norm_on_levels(d, E, g, 1e-6);
    CHECK(h1.max < 1e-6);
    CHECK(f1.max < 1e-6);

    const WarpedProduct W = WarpedProduct::warped(
        2, [](double t) { return 1.0 + t * t / 10.0; }, [](double t) { return t / 5.0; });
    const GraphFunction F = exp_over_circle();
    auto [h2, f2] = check_gradient_norm_on_levels(F, W, Grid::inset(F.domain(), {21, 21}, 0.02));
    CHECK(h2.max < 1e-4);
    CHECK(f2.max < 1e-4);
    CHECK(check_gradient_relation(F, W, Grid::inset(F.domain(), {11, 11}, 0.02)).passed());

    const GraphFunction p = perturbed();
    auto [h3, f3] = check_gradient_norm_on_levels(p, E, Grid::inset(p.domain(), {21, 21}, 0.02));
    CHECK(h3.failed());
    CHECK(f3.failed());
    // Along x + 0.1 y^2 = c, |grad F| = sqrt(1 + 0.04 y^2) spreads by about 0.08.
    CHECK(f3.max > 0.05);
}

TEST_CASE("theorem reports")
{
    TheoremConfig cfg;
    cfg.grid = 21;
    const ResidualReport cat = theorem_report(catenoid(), kAxis, cfg);
    CHECK(cat.all_pass());
    CHECK(cat.entries.size() == 5);
    CHECK(!cat.inconsistent);

    const ResidualReport ell = theorem_report(ellipse_cylinder(), kAxis, cfg);
    CHECK(ell.find(entry_names::principal_direction)->passed());
    CHECK(ell.find(entry_names::angle_constancy)->passed());
    CHECK(ell.find(entry_names::t_geodesic)->passed());
    CHECK(ell.find(entry_names::grad_h_levels)->skipped());
    CHECK(ell.find(entry_names::grad_f_levels)->skipped());
    CHECK(ell.all_pass());

    const ResidualReport bad = theorem_report(perturbed(), WarpedProduct::euclidean(3), cfg);
    for (const char* name : {entry_names::principal_direction, entry_names::angle_constancy,
                             entry_names::grad_h_levels, entry_names::grad_f_levels})
        CHECK(bad.find(name)->failed());
    CHECK(!bad.all_pass());
}

TEST_CASE("mixed verdicts are flagged")
{
    ResidualReport r;
    r.add(make_entry(entry_names::principal_direction, {1e-9}, {vec2(0, 0)}, 1e-5));
    r.add(make_entry(entry_names::angle_constancy, {1.0}, {vec2(0, 0)}, 1e-4));
    flag_inconsistency(r);
    CHECK(r.inconsistent);
    CHECK(!r.notes.empty());
}

TEST_CASE("report text format")
{
    ResidualReport r;
    r.surface = "s";
    r.grid_u = r.grid_v = 3;
    r.add(make_entry("a", {1e-3, 2e-3}, {vec2(0.1, 0.2), vec2(0.3, 0.4)}, 1e-2));
    r.add(skipped_entry("b", 1e-4, "not applicable"));
    r.finalize();
    const std::string text = r.to_text();
    CHECK(text.find("a\t2.000000000e-03\t1.500000000e-03\t3.000000000e-01\t4.000000000e-01\t1.000000000e-02\tpass") !=
          std::string::npos);
    CHECK(text.find("b\t-\t-\t-\t-\t1.000000000e-04\tskip\tnot applicable") != std::string::npos);
    CHECK(r.all_pass());
}
