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

#include <cpd/numdiff.hpp>
#include <cpd/tolerances.hpp>

#include <Eigen/Dense>

#include <functional>
#include <memory>

namespace cpd {

using Vec2 = Eigen::Vector2d;
using CurveFn = std::function<Vec2(double)>;
using RealFn = std::function<double(double)>;

/// A regular planar curve in an arbitrary parameter (not necessarily unit speed).
struct ParametricPlaneCurve {
    CurveFn eval;
    CurveFn d1; // optional
    CurveFn d2; // optional
    Interval domain;
    double fd_step = 1e-5;

    Vec2 velocity(double t) const;
    Vec2 acceleration(double t) const;
};

/// Arc-length parametrized planar curve. The Frenet normal is
/// eta = normal_sign * J T with J the +90 degree rotation; for a
/// counter-clockwise circle and the default sign it points inward.
class PlaneCurve {
public:
    PlaneCurve() = default;
    PlaneCurve(CurveFn eval, Interval domain, double fd_step = 1e-4, bool periodic = false);

    PlaneCurve& with_derivatives(CurveFn d1, CurveFn d2);
    PlaneCurve& with_normal_sign(double sign);

    static PlaneCurve circle(double radius, Vec2 center = Vec2::Zero());
    static PlaneCurve line(Vec2 origin, Vec2 direction, Interval domain);

    Vec2 point(double s) const { return eval_(s); }
    Vec2 d1(double s) const;
    Vec2 d2(double s) const;

    /// Derivative of the signed curvature, by central differences of kappa.
    double curvature_derivative(double s) const;

    const Interval& domain() const { return domain_; }
    double fd_step() const { return fd_step_; }
    bool periodic() const { return periodic_; }
    bool has_closed_form() const { return static_cast<bool>(d1_); }
    double normal_sign() const { return normal_sign_; }

private:
    void check_usable(double s) const;

    CurveFn eval_;
    CurveFn d1_;
    CurveFn d2_;
    Interval domain_;
    double fd_step_ = 1e-4;
    bool periodic_ = false;
    double normal_sign_ = 1.0;
};

struct FrenetFrame {
    Vec2 tangent;
    Vec2 normal;
    double curvature = 0.0;
};

/// T, eta, kappa with T' = kappa eta and eta' = -kappa T.
FrenetFrame frenet_frame(const PlaneCurve& curve, double s);

/// Reparametrizes by arc length: cumulative-length table on `n_samples`
/// intervals, monotone Hermite initial guess for the inverse, then Newton on
/// the exact length integral.
PlaneCurve arclength_reparam(const ParametricPlaneCurve& curve, int n_samples,
                             const Tolerances& tol = default_tolerances);

/// Length of a parametric curve by adaptive Gauss-Legendre panels.
double curve_length(const ParametricPlaneCurve& curve);

/// Planar profile beta(t) = (f(t), g(t)), expected to be unit speed.
class ProfileCurve {
public:
    ProfileCurve() = default;
    ProfileCurve(RealFn f, RealFn g, Interval domain, double fd_step = 1e-4);

    ProfileCurve& with_derivatives(RealFn fp, RealFn fpp, RealFn gp, RealFn gpp);

    /// (f, g) = (r cos(t/r), r sin(t/r)) on (-pi r/2, pi r/2) shrunk by `margin`.
    static ProfileCurve circle_arc(double radius, double margin = 0.05);
    /// (f, g) = (0, t).
    static ProfileCurve vertical_line(Interval domain);

    double f(double t) const { return f_(t); }
    double g(double t) const { return g_(t); }
    double fp(double t) const;
    double fpp(double t) const;
    double gp(double t) const;
    double gpp(double t) const;

    const Interval& domain() const { return domain_; }
    bool has_closed_form() const { return static_cast<bool>(fp_); }

    /// Checks f'^2 + g'^2 = 1 and g' != 0 on `samples` points; throws Precondition.
    void validate(const Tolerances& tol = default_tolerances, int samples = 201) const;

private:
    RealFn f_, g_, fp_, fpp_, gp_, gpp_;
    Interval domain_;
    double fd_step_ = 1e-4;
};

} // namespace cpd
