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
#include <cpd/linalg.hpp>
#include <cpd/simd/kernels.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cpd;
using namespace cpd::test;

TEST_CASE("arclength reparametrization of a circle of radius 2")
{
    ParametricPlaneCurve p;
    p.eval = [](double t) { return Vec2(2.0 * std::cos(t), 2.0 * std::sin(t)); };
    p.domain = {0.0, 2.0 * std::numbers::pi};
    const PlaneCurve c = arclength_reparam(p, 512);
    CHECK(c.domain().length() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-9));
    for (double s : {0.3, 2.0, 7.5, 12.0}) {
        CHECK(c.d1(s).norm() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(frenet_frame(c, s).curvature == doctest::Approx(0.5).epsilon(1e-5));
        // s = 2 theta
        CHECK((c.point(s) - p.eval(s / 2.0)).norm() < 1e-6);
    }
}

TEST_CASE("arclength reparametrization leaves a unit-speed segment unchanged")
{
    ParametricPlaneCurve p;
    p.eval = [](double t) { return Vec2(t, 0.0); };
    p.domain = {0.0, 1.0};
    const PlaneCurve c = arclength_reparam(p, 64);
    CHECK(c.domain().length() == doctest::Approx(1.0).epsilon(1e-10));
    for (double s : {0.0, 0.25, 0.9})
        CHECK((c.point(s) - Vec2(s, 0.0)).norm() < 1e-9);
}

TEST_CASE("parabola length against quadrature of sqrt(1 + 4t^2)")
{
    ParametricPlaneCurve p;
    p.eval = [](double t) { return Vec2(t, t * t); };
    p.domain = {0.0, 1.0};
    // Closed form: (2 sqrt5 + asinh 2) / 4.
    const double exact = (2.0 * std::sqrt(5.0) + std::asinh(2.0)) / 4.0;
    CHECK(exact == doctest::Approx(1.478943).epsilon(1e-6));
    CHECK(curve_length(p) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("Frenet frame of circle, line and ellipse")
{
    const FrenetFrame f = frenet_frame(PlaneCurve::circle(1.0), 0.0);
    CHECK((f.tangent - Vec2(0, 1)).norm() < 1e-12);
    CHECK((f.normal - Vec2(-1, 0)).norm() < 1e-12);
    CHECK(f.curvature == doctest::Approx(1.0));

    const PlaneCurve line = PlaneCurve::line(Vec2(1, 2), Vec2(3, 4), {-1.0, 1.0});
    CHECK(std::abs(frenet_frame(line, 0.3).curvature) < 1e-12);

    ParametricPlaneCurve e;
    e.eval = [](double s) { return Vec2(2.0 * std::cos(s), std::sin(s)); };
    e.domain = {0.0, 2.0 * std::numbers::pi};
    const PlaneCurve ec = arclength_reparam(e, 2048);
    CHECK(frenet_frame(ec, 1e-3).curvature == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("Frenet equations T' = k N and N' = -k T")
{
    const PlaneCurve c = PlaneCurve::circle(1.5);
    const double s = 0.7, h = 1e-5;
    const FrenetFrame f = frenet_frame(c, s);
    const Vec2 dT = (frenet_frame(c, s + h).tangent - frenet_frame(c, s - h).tangent) / (2 * h);
    const Vec2 dN = (frenet_frame(c, s + h).normal - frenet_frame(c, s - h).normal) / (2 * h);
    CHECK((dT - f.curvature * f.normal).norm() < 1e-8);
    CHECK((dN + f.curvature * f.tangent).norm() < 1e-8);
}

TEST_CASE("profile curve validation")
{
    CHECK_NOTHROW(catenary_profile_curve().validate());
    ProfileCurve slow([](double t) { return 0.0; }, [](double t) { return 2.0 * t; }, {0.0, 1.0});
    CHECK_THROWS_AS(slow.validate(), Error);
    ProfileCurve flat([](double t) { return t; }, [](double) { return 0.0; }, {0.0, 1.0});
    CHECK_THROWS_AS(flat.validate(), Error);
}

TEST_CASE("fundamental forms of plane and sphere")
{
    const Immersion plane([](const Vec& u) { return vec3(u[0], u[1], 0.0); }, {{-1, 1}, {-1, 1}},
                          WarpedProduct::euclidean(3));
    const FundamentalForms ff = fundamental_forms(plane, vec2(0.2, 0.3), vec3(0, 0, 1));
    CHECK((ff.metric - Mat::Identity(2, 2)).norm() < 1e-9);
    CHECK(ff.second_form.norm() < 1e-6);

    const double R = 3.0;
    const Immersion s = sphere(R);
    const Vec u = vec2(0.4, 1.1);
    const Vec inward = -s.point(u) / R;
    const FundamentalForms fs = fundamental_forms(s, u, inward);
    CHECK((fs.second_form - fs.metric / R).norm() < 1e-6);
}

TEST_CASE("shape data: sphere, cylinder, catenoid, parabolic graph")
{
    const Immersion s = sphere(2.0);
    const Vec u = vec2(0.4, 1.1);
    const double orient = s.normal(u).dot(s.point(u)) < 0 ? 1.0 : -1.0; // inward
    const ShapeData sd = shape_data(s, u, orient);
    CHECK(sd.principal_curvatures[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(sd.principal_curvatures[1] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(sd.umbilic);

    const Immersion cyl = circular_cylinder();
    const Vec k = shape_data(cyl, vec2(0.5, 0.1), -1.0).principal_curvatures;
    CHECK(std::abs(k[0]) < 1e-10);
    CHECK(std::abs(k[1]) == doctest::Approx(1.0));

    const Immersion cat = catenoid();
    const ShapeData c = shape_data(cat, vec2(0.9, 0.0), -1.0);
    CHECK(c.principal_curvatures[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(c.principal_curvatures[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(c.mean_curvature) < 1e-12);

    const Immersion graph([](const Vec& u) { return vec3(u[0], u[1], 0.5 * u[0] * u[0]); }, {{-1, 1}, {-1, 1}},
                          WarpedProduct::euclidean(3));
    const Vec kg = shape_data(graph, vec2(0.0, 0.0)).principal_curvatures;
    CHECK(std::abs(kg.cwiseAbs().minCoeff()) < 1e-6);
    CHECK(kg.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("shape operator is metric self-adjoint and H is its trace")
{
    const Immersion cat = catenoid();
    const ShapeData sd = shape_data(cat, vec2(1.3, 0.6));
    const Mat gA = sd.metric * sd.shape_operator;
    CHECK((gA - gA.transpose()).norm() < 1e-10);
    CHECK(sd.mean_curvature == doctest::Approx(sd.shape_operator.trace()));
}

TEST_CASE("degenerate immersion is rejected")
{
    const Immersion bad([](const Vec& u) { return vec3(u[0], u[0], u[0]); }, {{0, 1}, {0, 1}},
                        WarpedProduct::euclidean(3));
    CHECK_THROWS_AS(shape_data(bad, vec2(0.5, 0.5)), Error);
}

TEST_CASE("numerical derivatives")
{
    auto cube = [](double x) { return x * x * x; };
    CHECK(derivative(cube, 2.0, 1, {.h = 1e-3, .richardson = true}) == doctest::Approx(12.0).epsilon(1e-8));
    auto s = [](double x) { return std::sin(x); };
    CHECK(std::abs(derivative(s, 0.0, 2, {.h = 1e-3})) < 1e-6);
    CHECK_THROWS_AS(derivative(s, 0.0, 3), Error);
    CHECK_THROWS_AS(derivative(s, 0.0, 1, {.h = 0.1, .domain = Interval{0.0, 1.0}}), Error);

    // Order of accuracy on exp over h in [1e-1, 1e-3].
    auto e = [](double x) { return std::exp(x); };
    double sx = 0, sy = 0, sxx = 0, sxy = 0, rx = 0, ry = 0, rxx = 0, rxy = 0;
    int n = 0;
    for (double h = 1e-1; h > 0.99e-2; h /= 1.5, ++n) {
        const double a = std::log(std::abs(derivative(e, 0.5, 1, {.h = h}) - std::exp(0.5)));
        const double b = std::log(std::abs(derivative(e, 0.5, 1, {.h = h, .richardson = true}) - std::exp(0.5)));
        const double x = std::log(h);
        sx += x, sy += a, sxx += x * x, sxy += x * a;
        rx += x, ry += b, rxx += x * x, rxy += x * b;
    }
    const double plain = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double rich = (n * rxy - rx * ry) / (n * rxx - rx * rx);
    CHECK(plain == doctest::Approx(2.0).epsilon(0.02));
    CHECK(rich == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("mixed partials of vector-valued maps")
{
    auto fn = [](const Vec& u) { return vec3(u[0] * u[1], std::sin(u[0]) * u[1] * u[1], u[0]); };
    const Vec d = second_partial(fn, vec2(0.3, 0.7), 0, 1, {.h = 1e-3, .richardson = true});
    CHECK((d - vec3(1.0, 2.0 * 0.7 * std::cos(0.3), 0.0)).norm() < 1e-8);
}

TEST_CASE("conformal fields satisfy the closed conformal equation")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const WarpedProduct E = WarpedProduct::euclidean(3);
    const WarpedProduct W = WarpedProduct::warped(
        2, [](double t) { return 1.0 + t * t / 10.0; }, [](double t) { return t / 5.0; });
    const ConformalField c = ConformalField::constant(vec3(0, 0, 1));
    const ConformalField r = ConformalField::radial(vec3(0, 0, 0));
    const ConformalField w = ConformalField::warped(W);
    for (int i = 0; i < 20; ++i) {
        const Vec p = vec3(U(rng), U(rng), U(rng)) * 2.0;
        const Vec y = vec3(U(rng), U(rng), U(rng));
        CHECK(c.conformal_residual(E, p, y) < 1e-6);
        CHECK(r.conformal_residual(E, p, y) < 1e-6);
        CHECK(w.conformal_residual(W, p, y) < 1e-6);
        CHECK(r.phi(p) == 1.0);
        CHECK(w.phi(p) == doctest::Approx(p[0] / 5.0));
    }
    CHECK_THROWS_AS(ConformalField::constant(vec3(0, 0, 0)), Error);
}

TEST_CASE("warped product slices are scaled flat metrics")
{
    const WarpedProduct W = WarpedProduct::warped(
        2, [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); });
    const Mat g = W.gram(vec3(0.5, 1.0, 2.0));
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 1) == doctest::Approx(std::exp(1.0)));
    CHECK(g(2, 2) == doctest::Approx(std::exp(1.0)));
    CHECK(g(0, 1) == 0.0);
    const WarpedProduct bad = WarpedProduct::warped(
        2, [](double t) { return t; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(bad.check_point(vec3(-1.0, 0.0, 0.0)), Error);
}

TEST_CASE("generalized eigenproblem returns metric-unit vectors")
{
    Mat g(2, 2), b(2, 2);
    g << 2, 0.3, 0.3, 1;
    b << 1, 0.2, 0.2, -1;
    const GeneralizedEigen ge = generalized_eigen(g, b);
    for (int i = 0; i < 2; ++i) {
        const Vec v = ge.vectors.col(i);
        CHECK((b * v - ge.values[i] * g * v).norm() < 1e-12);
        CHECK(v.dot(g * v) == doctest::Approx(1.0));
    }
    CHECK(ge.values[0] <= ge.values[1]);
}

TEST_CASE("expression parser: precedence and functions")
{
    const std::vector<std::string> xy = {"x", "y"};
    auto at = [&](const std::string& s, double x, double y) { return Expr::parse(s, xy)(vec2(x, y)); };
    CHECK(at("1 + 2*3", 0, 0) == 7.0);
    CHECK(at("-2^2", 0, 0) == -4.0);
    CHECK(at("2^3^2", 0, 0) == 512.0);
    CHECK(at("(1+x)/(2-y)", 1, 1) == 2.0);
    CHECK(at("sqrt(x^2 + y^2)", 3, 4) == doctest::Approx(5.0));
    CHECK(at("cosh(asinh(x)) - sqrt(1+x^2)", 0.7, 0) == doctest::Approx(0.0));
    CHECK(at("ln(e) + log(1) + sin(pi)", 0, 0) == doctest::Approx(1.0));
    CHECK(at("abs(x) * sign(x)", -2, 0) == -2.0);
    CHECK(at("abs(x)", -2, 0) == 2.0);
    CHECK(at("atan(1) * 4", 0, 0) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("expression parser: errors carry the column")
{
    auto message = [](const std::string& s) {
        try {
            Expr::parse(s, {"x"});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("1 + * x").find("column 5") != std::string::npos);
    CHECK(message("foo(x)").find("foo") != std::string::npos);
    CHECK(message("y + 1").find("y") != std::string::npos);
    CHECK(message("(x + 1") != "");
    CHECK(message("sin x") != "");
}

TEST_CASE("symbolic derivatives agree with closed forms")
{
    const Expr f = Expr::parse("x^3*y + sin(x*y) + exp(-y^2)", {"x", "y"});
    const double x = 0.4, y = -0.9;
    const Vec p = vec2(x, y);
    CHECK(f.diff(0)(p) == doctest::Approx(3 * x * x * y + y * std::cos(x * y)).epsilon(1e-13));
    CHECK(f.diff(1)(p) == doctest::Approx(x * x * x + x * std::cos(x * y) - 2 * y * std::exp(-y * y)).epsilon(1e-13));
    CHECK(f.diff(0).diff(1)(p) ==
          doctest::Approx(3 * x * x + std::cos(x * y) - x * y * std::sin(x * y)).epsilon(1e-13));
    CHECK(Expr::parse("3*x + 2", {"x"}).diff(0).is_constant());
    CHECK(Expr::parse("x^2", {"x"}).diff(0).diff(0).diff(0).is_constant());
}

TEST_CASE("graph function from expression fills all derivative slots")
{
    const GraphFunction g = graph_function_from_expr(Expr::parse("x^2*y + y^3", {"x", "y"}), {{-1, 1}, {-1, 1}});
    const Vec p = vec2(0.3, 0.5);
    CHECK(g.has_closed_gradient());
    CHECK(g.has_closed_hessian());
    CHECK(g.has_closed_third());
    CHECK((g.gradient(p) - g.finite_difference_copy().gradient(p)).norm() < 1e-7);
    CHECK(g.laplacian(p) == doctest::Approx(g.hessian(p).trace()));
    // Delta F = 2y + 6y, grad Delta F = (0, 8).
    CHECK((g.grad_laplacian(p) - vec2(0.0, 8.0)).norm() < 1e-12);
}

TEST_CASE("SIMD kernels agree bitwise with the scalar reference")
{
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const std::size_t n = 103;
    std::vector<double> ax(n), ay(n), dx(n), dy(n), il(n);
    for (std::size_t i = 0; i < n; ++i) {
        ax[i] = U(rng), ay[i] = U(rng), dx[i] = U(rng), dy[i] = U(rng);
        il[i] = 1.0 / (dx[i] * dx[i] + dy[i] * dy[i]);
    }
    const simd::SegmentSpan segs{ax, ay, dx, dy, il};
    std::vector<double> d_ref(n), t_ref(n), d(n), t(n);
    simd::detail::segment_distances_scalar(0.3, -0.2, segs, d_ref.data(), t_ref.data());
    std::vector<double> a(1001), b(1001);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = U(rng), b[i] = U(rng);
    const simd::DiffStats ref = simd::detail::abs_diff_stats_scalar(a.data(), b.data(), a.size());

    for (simd::Backend be : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
        if (!simd::supported(be))
            continue;
        CAPTURE(simd::name(be));
        simd::force_backend(be);
        simd::segment_distances(0.3, -0.2, segs, d, t);
        CHECK(d == d_ref);
        CHECK(t == t_ref);
        const simd::DiffStats s = simd::abs_diff_stats(a, b);
        CHECK(s.max == ref.max);
        CHECK(s.argmax == ref.argmax);
        CHECK(s.count == ref.count);
        CHECK(std::abs(s.sum - ref.sum) <= 1e-12 * ref.sum);
    }
    simd::reset_backend();
}
