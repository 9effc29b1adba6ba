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

#include <cpd/curve.hpp>
#include <cpd/field.hpp>
#include <cpd/graph_function.hpp>
#include <cpd/immersion.hpp>

#include <functional>
#include <vector>

namespace cpd {

/// phi(s,t) = gamma(s) + f(t) eta(s) + g(t) X0 in R^3, gamma embedded in the
/// plane through the origin orthogonal to X0. Closed-form partials; the
/// reference normal is -g' eta + f' X0.
///
/// Throws FocalSet when 1 - f kappa vanishes or changes sign on the domain.
Immersion cpd_surface_r3(const PlaneCurve& gamma, const ProfileCurve& beta, const Vec& x0,
                         const Tolerances& tol = default_tolerances);

/// Orthonormal basis (e1, e2) of the plane orthogonal to the unit vector x0,
/// with (e1, e2, x0) positively oriented.
std::pair<Vec, Vec> orthogonal_plane_basis(const Vec& x0);

/// A parametrized submanifold of any codimension (the base L of cpd_hypersurface).
struct ParametricPatch {
    std::function<Vec(const Vec&)> eval;
    std::function<Mat(const Vec&)> first; // optional
    std::vector<Interval> domain;
    double fd_step = 1e-5;

    Mat partials(const Vec& x) const;
};

/// Phi(x,t) = phi(x) + f(t) eta(x) + g(t) X/|X|, for L orthogonal to a closed
/// conformal field X in R^{n+1} and eta a unit normal of L inside the leaf.
Immersion cpd_hypersurface(const ParametricPatch& base, std::function<Vec(const Vec&)> eta,
                           const ProfileCurve& beta, const ConformalField& field,
                           const Tolerances& tol = default_tolerances);

/// Graph x -> (F(x), x) in the warped product, normal (rho o F)^2 d_t - grad F.
Immersion graph_in_warped_product(const GraphFunction& f, const WarpedProduct& ambient);

struct ProjectionFrame {
    Vec x;             // X at the point
    Vec x_tangent;     // X^T
    Vec t;             // unit tangential direction
    Vec t_coeff;       // T in parameter coordinates
    Vec xi;            // unit normal
    double theta = 0.0;
    double cos_theta = 0.0;
    bool near_half_pi = false; // |cos theta| < eps_costheta
};

/// Decomposition X = |X| (sin(theta) T + cos(theta) xi) at u.
/// Throws ZeroField when X vanishes and Transversality when X^T does.
ProjectionFrame projection_frame(const Immersion& m, const ConformalField& field, const Vec& u,
                                 double orientation = 1.0,
                                 const Tolerances& tol = default_tolerances);

struct GradientRelations {
    double norm_grad_h = 0.0;      // |grad h|^2 = |grad F|^2 / (|grad F|^2 + rho^2)
    double norm_grad_f = 0.0;
    double norm_grad_f_from_h = 0.0; // inverse relation
    double norm_grad_h_tangent = 0.0; // |d_t^T| measured on the immersed graph
    double cos_theta = 1.0;
    bool critical_point = false;  // grad F = 0, theta = 0 is outside (0, pi)
};

/// Throws Inconsistency when |grad h| >= 1.
GradientRelations gradient_relations(const GraphFunction& f, const WarpedProduct& ambient,
                                     const Vec& x);

} // namespace cpd
