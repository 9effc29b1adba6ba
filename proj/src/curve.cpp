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
#include <cpd/curve.hpp>
#include <cpd/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace cpd {

namespace {

constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class Fn>
double gauss_legendre8(const Fn& fn, double a, double b)
{
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (size_t i = 0; i < kGlNodes.size(); ++i)
        sum += kGlWeights[i] * fn(mid + half * kGlNodes[i]);
    return sum * half;
}

template <class Fn>
double adaptive_gl(const Fn& fn, double a, double b, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double left = gauss_legendre8(fn, a, m), right = gauss_legendre8(fn, m, b);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(left + right - whole) <= std::max(tol, floor))
        return left + right;
    return adaptive_gl(fn, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_gl(fn, m, b, right, 0.5 * tol, depth - 1);
}

// rel_tol must sit above the noise of fn: differenced speeds carry about 1e-11.
template <class Fn>
double integrate(const Fn& fn, double a, double b, double rel_tol = 1e-15)
{
    const double whole = gauss_legendre8(fn, a, b);
    return adaptive_gl(fn, a, b, whole, rel_tol * std::max(1.0, std::abs(whole)), 16);
}

double speed_tolerance(const ParametricPlaneCurve& c) { return c.d1 ? 1e-15 : 1e-10; }

Vec2 rotate90(const Vec2& v) { return {-v.y(), v.x()}; }

} // namespace

Vec2 ParametricPlaneCurve::velocity(double t) const
{
    if (d1)
        return d1(t);
    return derivative(eval, t, 1, {.h = fd_step, .richardson = true});
}

Vec2 ParametricPlaneCurve::acceleration(double t) const
{
    if (d2)
        return d2(t);
    if (d1)
        return derivative(d1, t, 1, {.h = fd_step, .richardson = true});
    return derivative(eval, t, 2, {.h = std::max(fd_step, 1e-4), .richardson = true});
}

double curve_length(const ParametricPlaneCurve& curve)
{
    return integrate([&](double t) { return curve.velocity(t).norm(); }, curve.domain.lo, curve.domain.hi,
                     speed_tolerance(curve));
}

PlaneCurve::PlaneCurve(CurveFn eval, Interval domain, double fd_step, bool periodic)
    : eval_(std::move(eval)), domain_(domain), fd_step_(fd_step), periodic_(periodic)
{
}

PlaneCurve& PlaneCurve::with_derivatives(CurveFn d1, CurveFn d2)
{
    d1_ = std::move(d1);
    d2_ = std::move(d2);
    return *this;
}

PlaneCurve& PlaneCurve::with_normal_sign(double sign)
{
    normal_sign_ = sign < 0 ? -1.0 : 1.0;
    return *this;
}

PlaneCurve PlaneCurve::circle(double radius, Vec2 center)
{
    const double r = radius;
    PlaneCurve c([=](double s) { return Vec2(center + r * Vec2(std::cos(s / r), std::sin(s / r))); },
                 {0.0, 2.0 * std::numbers::pi * r}, 1e-4, true);
    c.with_derivatives([=](double s) { return Vec2(-std::sin(s / r), std::cos(s / r)); },
                       [=](double s) { return Vec2(-std::cos(s / r) / r, -std::sin(s / r) / r); });
    return c;
}

PlaneCurve PlaneCurve::line(Vec2 origin, Vec2 direction, Interval domain)
{
    const Vec2 d = direction.normalized();
    PlaneCurve c([=](double s) { return Vec2(origin + s * d); }, domain, 1e-4, false);
    c.with_derivatives([=](double) { return d; }, [](double) { return Vec2(Vec2::Zero()); });
    return c;
}

void PlaneCurve::check_usable(double s) const
{
    if (periodic_)
        return;
    const double margin = d1_ ? 0.0 : 2.0 * fd_step_;
    if (s < domain_.lo + margin || s > domain_.hi - margin)
        throw Error(ErrorKind::Domain, "curve parameter s=" + std::to_string(s) +
                                           " outside usable domain");
}

Vec2 PlaneCurve::d1(double s) const
{
    check_usable(s);
    if (d1_)
        return d1_(s);
    return derivative(eval_, s, 1, {.h = fd_step_, .richardson = true});
}

Vec2 PlaneCurve::d2(double s) const
{
    check_usable(s);
    if (d2_)
        return d2_(s);
    if (d1_)
        return derivative(d1_, s, 1, {.h = fd_step_, .richardson = true});
    return derivative(eval_, s, 2, {.h = fd_step_, .richardson = true});
}

double PlaneCurve::curvature_derivative(double s) const
{
    const double h = d1_ ? fd_step_ : std::max(1e-3, 10.0 * fd_step_);
    auto kappa = [&](double x) { return frenet_frame(*this, x).curvature; };
    if (!periodic_) {
        const double margin = d1_ ? 0.0 : 2.0 * fd_step_;
        const double lo = domain_.lo + margin + h, hi = domain_.hi - margin - h;
        if (s < lo || s > hi) {
            // One-sided second-order stencil near the ends.
            const double dir = s < lo ? 1.0 : -1.0;
            return dir * (-3.0 * kappa(s) + 4.0 * kappa(s + dir * h) - kappa(s + 2 * dir * h)) /
                   (2.0 * h);
        }
    }
    return derivative(kappa, s, 1, {.h = h, .richardson = false});
}

FrenetFrame frenet_frame(const PlaneCurve& curve, double s)
{
    const Vec2 v = curve.d1(s);
    const Vec2 a = curve.d2(s);
    FrenetFrame fr;
    fr.tangent = v.normalized();
    fr.normal = curve.normal_sign() * rotate90(fr.tangent);
    fr.curvature = a.dot(fr.normal);
    return fr;
}

PlaneCurve arclength_reparam(const ParametricPlaneCurve& curve, int n_samples, const Tolerances& tol)
{
    if (n_samples < 1)
        throw Error(ErrorKind::Precondition, "arclength_reparam needs at least one interval");
    struct Table {
        ParametricPlaneCurve curve;
        std::vector<double> tau, s, speed;
    };
    auto table = std::make_shared<Table>();
    table->curve = curve;
    const Interval dom = curve.domain;
    const auto n = static_cast<size_t>(n_samples);
    table->tau.resize(n + 1);
    table->s.resize(n + 1);
    table->speed.resize(n + 1);
    auto speed = [c = &table->curve](double t) { return c->velocity(t).norm(); };
    const double rel_tol = speed_tolerance(curve);
    for (size_t k = 0; k <= n; ++k) {
        table->tau[k] = dom.lo + dom.length() * static_cast<double>(k) / static_cast<double>(n);
        table->speed[k] = speed(table->tau[k]);
        const double mid_speed =
            k < n ? speed(table->tau[k] + 0.5 * dom.length() / static_cast<double>(n)) : 1.0;
        if (table->speed[k] < tol.eps_regular || mid_speed < tol.eps_regular)
            throw Error(ErrorKind::DegenerateCurve,
                        "curve speed vanishes near t=" + std::to_string(table->tau[k]));
    }
    table->s[0] = 0.0;
    for (size_t k = 0; k < n; ++k)
        table->s[k + 1] = table->s[k] + integrate(speed, table->tau[k], table->tau[k + 1], rel_tol);

    auto tau_of = [table, speed, rel_tol](double s) {
        const auto& S = table->s;
        const auto& T = table->tau;
        s = std::clamp(s, S.front(), S.back());
        size_t k = static_cast<size_t>(std::upper_bound(S.begin(), S.end(), s) - S.begin());
        k = std::clamp<size_t>(k, 1, S.size() - 1) - 1;
        const double ds = S[k + 1] - S[k];
        const double x = (s - S[k]) / ds;
        // Cubic Hermite in s with slopes dtau/ds = 1/speed.
        const double h00 = (1 + 2 * x) * (1 - x) * (1 - x), h10 = x * (1 - x) * (1 - x);
        const double h01 = x * x * (3 - 2 * x), h11 = x * x * (x - 1);
        double tau = h00 * T[k] + h10 * ds / table->speed[k] + h01 * T[k + 1] +
                     h11 * ds / table->speed[k + 1];
        tau = std::clamp(tau, T[k], T[k + 1]);
        for (int it = 0; it < 8; ++it) {
            const double residual = S[k] + integrate(speed, T[k], tau, rel_tol) - s;
            const double step = residual / speed(tau);
            tau = std::clamp(tau - step, T[k], T[k + 1]);
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(tau)))
                break;
        }
        return tau;
    };

    const double length = table->s.back();
    PlaneCurve out([table, tau_of](double s) { return table->curve.eval(tau_of(s)); }, {0.0, length},
                   1e-4, false);
    out.with_derivatives(
        [table, tau_of](double s) { return Vec2(table->curve.velocity(tau_of(s)).normalized()); },
        [table, tau_of](double s) {
            const double tau = tau_of(s);
            const Vec2 v = table->curve.velocity(tau);
            const Vec2 a = table->curve.acceleration(tau);
            const Vec2 t = v.normalized();
            return Vec2((a - a.dot(t) * t) / v.squaredNorm());
        });
    return out;
}

ProfileCurve::ProfileCurve(RealFn f, RealFn g, Interval domain, double fd_step)
    : f_(std::move(f)), g_(std::move(g)), domain_(domain), fd_step_(fd_step)
{
}

ProfileCurve& ProfileCurve::with_derivatives(RealFn fp, RealFn fpp, RealFn gp, RealFn gpp)
{
    fp_ = std::move(fp);
    fpp_ = std::move(fpp);
    gp_ = std::move(gp);
    gpp_ = std::move(gpp);
    return *this;
}

ProfileCurve ProfileCurve::circle_arc(double radius, double margin)
{
    const double r = radius;
    const double half = 0.5 * std::numbers::pi * r * (1.0 - margin);
    ProfileCurve p([=](double t) { return r * std::cos(t / r); },
                   [=](double t) { return r * std::sin(t / r); }, {-half, half});
    p.with_derivatives([=](double t) { return -std::sin(t / r); },
                       [=](double t) { return -std::cos(t / r) / r; },
                       [=](double t) { return std::cos(t / r); },
                       [=](double t) { return -std::sin(t / r) / r; });
    return p;
}

ProfileCurve ProfileCurve::vertical_line(Interval domain)
{
    ProfileCurve p([](double) { return 0.0; }, [](double t) { return t; }, domain);
    p.with_derivatives([](double) { return 0.0; }, [](double) { return 0.0; },
                       [](double) { return 1.0; }, [](double) { return 0.0; });
    return p;
}

double ProfileCurve::fp(double t) const
{
    return fp_ ? fp_(t) : derivative(f_, t, 1, {.h = fd_step_, .richardson = true});
}
double ProfileCurve::fpp(double t) const
{
    return fpp_ ? fpp_(t) : derivative(f_, t, 2, {.h = fd_step_, .richardson = true});
}
double ProfileCurve::gp(double t) const
{
    return gp_ ? gp_(t) : derivative(g_, t, 1, {.h = fd_step_, .richardson = true});
}
double ProfileCurve::gpp(double t) const
{
    return gpp_ ? gpp_(t) : derivative(g_, t, 2, {.h = fd_step_, .richardson = true});
}

void ProfileCurve::validate(const Tolerances& tol, int samples) const
{
    for (int i = 0; i < samples; ++i) {
        const double t = domain_.lo + domain_.length() * i / std::max(1, samples - 1);
        const double a = fp(t), b = gp(t);
        if (std::abs(a * a + b * b - 1.0) > tol.unit_speed)
            throw Error(ErrorKind::Precondition,
                        "profile is not unit speed at t=" + std::to_string(t));
        if (std::abs(b) < tol.eps_regular)
            throw Error(ErrorKind::Precondition, "profile has g'=0 at t=" + std::to_string(t));
    }
}

} // namespace cpd
