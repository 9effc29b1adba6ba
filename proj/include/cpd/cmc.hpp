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
#include <cpd/grid.hpp>
#include <cpd/report.hpp>

#include <string>
#include <vector>

namespace cpd {

struct CatenaryPoint {
    double f, g, fp, gp, fpp, gpp;
};

/// f = cosh(asinh t) + 1, g = asinh t and derivatives.
CatenaryPoint catenary_profile(double t);
ProfileCurve catenary_profile_curve(Interval domain = {-1.5, 1.5});

/// Circle of curvature kappa (normal inward for kappa > 0), or the x-axis for kappa = 0.
PlaneCurve base_curve_for_curvature(double kappa);

enum class ProfileClass { Plane, Cylinder, Sphere, CatenoidType, Unduloid, Nodoid, Unknown };
std::string to_string(ProfileClass c);

struct ProfileSample {
    double t, f, fp, g, gp;
};

/// Orbit of the profile ODE in the state (f, g, f', g'), with the unit-speed
/// constraint restored after every step.
struct ProfileSolution {
    std::vector<ProfileSample> samples; // ascending t
    double target_H = 0.0;
    double base_kappa = 0.0;
    ProfileClass classification = ProfileClass::Unknown;
    bool focal = false;   // stopped where 1 - f kappa vanishes
    bool turning = false; // g' changed sign (profile turned vertical)

    /// lambda = g' f'' - f' g'' (equals f''/g' where g' != 0).
    double lambda(std::size_t i) const;
    /// mu = g' kappa / (1 - f kappa).
    double mu(std::size_t i) const;
    double max_unit_speed_error() const;
    /// max |lambda + mu - H| over the samples.
    double max_mean_curvature_error() const;

    /// Dense output: quintic Hermite interpolation of f and g.
    ProfileCurve curve() const;
    std::string to_csv() const;
    void write_csv(const std::string& path) const;
};

/// Integrates from t = clamp(0, t_range) in both directions with RK4.
ProfileSolution cmc_profile_ode(double H0, double kappa, double f0, double fp0, Interval t_range, double step);

/// Rotation-type surface gamma(s) + f eta + g e3 for an orbit.
Immersion profile_surface(const ProfileSolution& sol);

/// |H - target| from shape operators of the generated surface, closed-form and
/// finite-difference variants.
ReportEntry profile_mean_curvature_check(const ProfileSolution& sol, bool finite_differences, double tol,
                                         int samples = 200);

struct SliceCheckOptions {
    int samples_per_slice = 64;
    int random_points = 100;
    double tol_variation = 1e-6;
    double tol_split = 1e-5;
    unsigned seed = 20260101u;
};

/// Curvatures of the slices s -> phi(s, t) of a surface in R^3: variation of
/// the ambient and geodesic curvature along each slice, and the splitting of
/// second fundamental forms (slice in R^3 = slice in M + M in R^3) at random points.
std::vector<ReportEntry> slice_curvature_check(const Immersion& m, const std::vector<double>& t_values,
                                               const SliceCheckOptions& opt = {});

/// Curvature of the slice at fixed t, sampled along s.
std::vector<double> slice_ambient_curvature(const Immersion& m, double t, int samples);

/// H = -div(grad F / sqrt(1 + |grad F|^2)) (trace convention, upward normal).
double graph_mean_curvature(const GraphFunction& f, const Vec& x);
std::vector<double> graph_mean_curvature(const GraphFunction& f, const Grid& grid);

/// (1/2) Lap |grad F|^2 - |Hess F|^2 - <grad F, grad Lap F> on a flat base.
ReportEntry bochner_residual(const GraphFunction& f, const Grid& grid, double tol);

enum class DichotomyVerdict { TotallyGeodesic, HypothesisNotMet, Inconclusive };
std::string to_string(DichotomyVerdict v);

struct DichotomyOptions {
    double tol_variance = 1e-10;
    double tol_hessian = 1e-6;
};

struct DichotomyReport {
    DichotomyVerdict verdict = DichotomyVerdict::Inconclusive;
    double grad_norm_variance = 0.0;
    double laplacian_variance = 0.0;
    double max_hessian = 0.0;
    double max_second_form = 0.0;
    double max_T_derivative = 0.0;
    double theta_min = 0.0;
    double theta_max = 0.0;
    std::vector<std::string> notes;
};

/// Checks the constant-angle + constant-mean-curvature hypotheses for a graph
/// over flat R^2 and, when met, that Hess F, the second fundamental form and
/// the covariant derivative of T vanish.
DichotomyReport dichotomy_check(const GraphFunction& f, const Grid& grid, const DichotomyOptions& opt = {});

} // namespace cpd
