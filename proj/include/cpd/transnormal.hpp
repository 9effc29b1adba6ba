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

#include <cpd/distance.hpp>
#include <cpd/graph_function.hpp>
#include <cpd/grid.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace cpd {

using ScalarFn = std::function<double(double)>;

/// Composite Simpson rule on `panels` (rounded up to even) subintervals.
double composite_simpson(const ScalarFn& fn, double a, double b, int panels);

/// Adaptive Simpson with absolute tolerance `tol`.
double adaptive_simpson(const ScalarFn& fn, double a, double b, double tol = 1e-10);

/// Increasing map h with h^{-1}(s) = integral of 1/b from s0 to s, tabulated on
/// a uniform node set of the s-range.
class MonotoneMap {
public:
    MonotoneMap(ScalarFn b, double s0, Interval s_range, int n_nodes, double eps_b = 1e-10);

    /// h^{-1}(s).
    double inverse(double s) const;
    /// h(u): bracketed bisection on the table, then Newton on the exact integral.
    double forward(double u) const;
    /// h'(u) = b(h(u)).
    double forward_prime(double u) const;
    /// h''(u) = b'(h(u)) b(h(u)).
    double forward_second(double u) const;

    double b(double s) const { return b_(s); }
    double b_prime(double s) const;
    const Interval& s_range() const { return s_range_; }
    Interval u_range() const { return {u_.front(), u_.back()}; }
    double anchor() const { return s0_; }

private:
    double bracket(double u, std::size_t& k) const;

    ScalarFn b_;
    double s0_;
    Interval s_range_;
    double eps_b_;
    std::vector<double> s_, u_;
};

/// Builds the map pair (h, h^{-1}) of a positive bound b.
MonotoneMap h_from_b(ScalarFn b, double s0, Interval s_range, int n_nodes = 1001);

/// Like h_from_b, but grows the s-range from s0 until h^{-1} covers `u_range`.
MonotoneMap h_from_b_covering(ScalarFn b, double s0, Interval u_range, int n_nodes = 1001);

enum class TransnormalSide { Signed, Positive, Negative, Unsigned };

struct TransnormalSpec {
    ScalarFn b;
    double s0 = 0.0;
    std::optional<Interval> s_range; // grown automatically from the tube when absent
    int n_nodes = 1001;
    std::shared_ptr<const DistanceField> base;
    TransnormalSide side = TransnormalSide::Signed;
    std::vector<Interval> domain; // rectangle handed to the graph function
    std::string name = "transnormal";
};

/// F = h o d with closed-form gradient h'(d) grad d and Hessian
/// h''(d) grad d grad d^T + h'(d) Hess d. One-sided variants throw Domain on
/// the other side; Unsigned uses |d| and is not differentiable on L.
GraphFunction transnormal_from_distance(const TransnormalSpec& spec);

/// The map built for a spec (same one transnormal_from_distance uses).
std::shared_ptr<const MonotoneMap> transnormal_map(const TransnormalSpec& spec);

/// d = h^{-1} o F with gradient grad F / b(F).
GraphFunction reconstruct_distance(const GraphFunction& F, std::shared_ptr<const MonotoneMap> map);

struct EikonalStats {
    double max = 0.0;
    double mean = 0.0;
    Vec worst;
    std::vector<double> residuals; // NaN where F could not be evaluated
    std::size_t evaluated = 0;
    std::size_t excluded = 0;
    bool pass = false;
};

/// r(x) = | |grad F(x)| - b(F(x)) | over the grid nodes.
EikonalStats eikonal_residual(const GraphFunction& F, const ScalarFn& b, const Grid& grid, double tol = 1e-6);

/// Level curves fn = c on a 2D grid by marching squares (linear edge
/// interpolation, saddles resolved by the cell centre). Cells where fn throws
/// are skipped.
std::vector<Polyline> marching_squares(const std::function<double(const Vec2&)>& fn, double c,
                                       const Grid& grid);

/// Marching squares followed by Newton correction of each point along grad F.
std::vector<Polyline> level_set_extract(const GraphFunction& F, double c, const Grid& grid);

struct LevelGradientStats {
    std::size_t points = 0;
    double mean = 0.0;
    double variance = 0.0;
    double max_deviation = 0.0;
};

/// Spread of |grad F| along the level set F = c.
LevelGradientStats level_gradient_stats(const GraphFunction& F, double c, const Grid& grid);

} // namespace cpd
