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
#include <utility>

namespace cpd {

/// Shared knobs for the checks below.
struct CheckOptions {
    Tolerances tol = default_tolerances;
    double orientation = 1.0;
    /// Parameter step for differencing theta, relative to the smallest domain side.
    double theta_step = 1e-4;
    /// Ambient arc length of the integral-curve segments used for grad_T T.
    double geodesic_step = 2e-3;
    /// Number of level values for the gradient-norm checks.
    int levels = 9;
};

namespace entry_names {
inline constexpr const char* principal_direction = "principal_direction";
inline constexpr const char* angle_constancy = "angle_constancy";
inline constexpr const char* t_geodesic = "t_geodesic";
inline constexpr const char* grad_h_levels = "grad_h_on_levels";
inline constexpr const char* grad_f_levels = "grad_f_on_levels";
inline constexpr const char* gradient_relation = "gradient_relation";
} // namespace entry_names

/// |A T - <A T, T> T| in the metric at every grid node.
ReportEntry check_principal_direction(const Immersion& m, const ConformalField& x, const Grid& grid,
                                      double tol = 1e-5, const CheckOptions& opt = {});

/// max |Z(theta)| over a metric-orthonormal basis Z of the complement of T.
ReportEntry check_angle_constancy(const Immersion& m, const ConformalField& x, const Grid& grid,
                                  double tol = 1e-4, const CheckOptions& opt = {});

/// |grad_T T| from short integral curves of T.
ReportEntry check_T_geodesic(const Immersion& m, const ConformalField& x, const Grid& grid,
                             double tol = 1e-4, const CheckOptions& opt = {});

/// Spread of |grad h| and |grad F| along level curves of the height function,
/// extracted on a 2D parameter grid. Returns (h entry, F entry).
std::pair<ReportEntry, ReportEntry> check_gradient_norm_on_levels(const Immersion& m, const ConformalField& x,
                                                                  const Grid& grid, double tol = 1e-4,
                                                                  const CheckOptions& opt = {});

/// Same for a graph function F over a planar base of the warped product W.
std::pair<ReportEntry, ReportEntry> check_gradient_norm_on_levels(const GraphFunction& f, const WarpedProduct& w,
                                                                  const Grid& grid, double tol = 1e-4,
                                                                  const CheckOptions& opt = {});

/// |grad h| from the closed relation against the tangential part of d_t.
ReportEntry check_gradient_relation(const GraphFunction& f, const WarpedProduct& w, const Grid& grid,
                                    double tol = 1e-8);

struct TheoremConfig {
    int grid = 41;          // nodes per parameter axis
    int grid_v = 0;         // nodes on the second axis when positive
    double inset = 0.02;    // grid is shrunk by this fraction of each side
    double tol_principal = 1e-5;
    double tol_angle = 1e-4;
    double tol_geodesic = 1e-4;
    double tol_levels = 1e-4;
    CheckOptions options;
};

/// All five equivalent conditions on an immersion with a closed conformal field.
ResidualReport theorem_report(const Immersion& m, const ConformalField& x, const TheoremConfig& cfg = {});

/// Graph mode: F over the base of W with the field rho d_t.
ResidualReport theorem_report(const GraphFunction& f, const WarpedProduct& w, const TheoremConfig& cfg = {});

/// Sets `inconsistent` when the five conditions disagree (pass next to fail).
void flag_inconsistency(ResidualReport& report);

} // namespace cpd
