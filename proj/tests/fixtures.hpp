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

#include <cpd/cmc.hpp>
#include <cpd/construct.hpp>

#include <cmath>
#include <numbers>

namespace cpd::test {

inline Vec vec2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

inline Vec vec3(double a, double b, double c)
{
    Vec v(3);
    v << a, b, c;
    return v;
}

inline Immersion sphere(double R)
{
    Immersion m(
        [R](const Vec& u) {
            return vec3(R * std::sin(u[1]) * std::cos(u[0]), R * std::sin(u[1]) * std::sin(u[0]), R * std::cos(u[1]));
        },
        {{0.0, 2.0 * std::numbers::pi}, {0.2, std::numbers::pi - 0.2}}, WarpedProduct::euclidean(3));
    return m;
}

inline Immersion catenoid(Interval t = {-1.0, 1.0})
{
    return cpd_surface_r3(PlaneCurve::circle(1.0), catenary_profile_curve(t), vec3(0, 0, 1));
}

inline Immersion circular_cylinder()
{
    return cpd_surface_r3(PlaneCurve::circle(1.0), ProfileCurve::vertical_line({-1.0, 1.0}), vec3(0, 0, 1));
}

inline Immersion ellipse_cylinder(double a = 2.0, double b = 1.0)
{
    ParametricPlaneCurve p;
    p.eval = [a, b](double s) { return Vec2(a * std::cos(s), b * std::sin(s)); };
    p.d1 = [a, b](double s) { return Vec2(-a * std::sin(s), b * std::cos(s)); };
    p.d2 = [a, b](double s) { return Vec2(-a * std::cos(s), -b * std::sin(s)); };
    p.domain = {0.0, 2.0 * std::numbers::pi};
    return cpd_surface_r3(arclength_reparam(p, 1024), ProfileCurve::vertical_line({-1.0, 1.0}), vec3(0, 0, 1));
}

} // namespace cpd::test
