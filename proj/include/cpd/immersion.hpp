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

#include <cpd/ambient.hpp>
#include <cpd/tolerances.hpp>

#include <functional>
#include <string>
#include <vector>

namespace cpd {

/// Immersion phi: U subset R^n -> ambient (dimension n + 1). Derivatives come
/// from closed-form callbacks when supplied, otherwise from central
/// differences with Richardson extrapolation.
class Immersion {
public:
    using EvalFn = std::function<Vec(const Vec&)>;
    using FirstFn = std::function<Mat(const Vec&)>;                // column i = d_i phi
    using SecondFn = std::function<std::vector<Vec>(const Vec&)>; // row-major n x n
    using NormalFn = std::function<Vec(const Vec&)>;

    Immersion() = default;
    Immersion(EvalFn eval, std::vector<Interval> domain, WarpedProduct ambient,
              double fd_step = 1e-4);

    Immersion& with_first(FirstFn fn);
    Immersion& with_second(SecondFn fn);
    Immersion& with_normal(NormalFn fn);
    Immersion& with_name(std::string name);

    int param_dim() const { return static_cast<int>(domain_.size()); }
    int ambient_dim() const { return ambient_.dim(); }
    const std::vector<Interval>& domain() const { return domain_; }
    const WarpedProduct& ambient() const { return ambient_; }
    const std::string& name() const { return name_; }
    double fd_step() const { return fd_step_; }
    bool has_closed_first() const { return static_cast<bool>(first_); }
    bool has_closed_second() const { return static_cast<bool>(second_); }
    bool has_closed_normal() const { return static_cast<bool>(normal_); }

    Vec point(const Vec& u) const;
    Mat first(const Vec& u) const;
    std::vector<Vec> second(const Vec& u) const;

    /// Unit normal (in the ambient metric) with the reference orientation:
    /// the supplied callback, or the metric dual of the cofactor normal
    /// (d_u phi x d_v phi for surfaces in R^3).
    Vec normal(const Vec& u) const;

    /// Copy whose derivatives and normal are all computed by finite differences.
    Immersion finite_difference_copy() const;

    /// Parameter step used for finite differences in direction i.
    double step(int i) const;

private:
    EvalFn eval_;
    FirstFn first_;
    SecondFn second_;
    NormalFn normal_;
    std::vector<Interval> domain_;
    WarpedProduct ambient_;
    double fd_step_ = 1e-4;
    std::string name_ = "surface";
};

struct FundamentalForms {
    Mat metric;
    Mat second_form;
};

/// First and second fundamental forms at u for the unit normal xi.
FundamentalForms fundamental_forms(const Immersion& m, const Vec& u, const Vec& xi,
                                   const Tolerances& tol = default_tolerances);

struct ShapeData {
    Mat metric;
    Mat second_form;
    Mat shape_operator; // metric^-1 * second_form, acting on coefficient vectors
    Vec principal_curvatures;       // ascending
    Mat principal_directions;       // coefficient columns, unit in the metric
    Mat principal_directions_ambient;
    double mean_curvature = 0.0;    // trace convention
    bool umbilic = false;           // directions unstable
    Vec point;
    Vec normal;
    Mat partials;
};

/// Shape data at u for the normal orientation * m.normal(u).
ShapeData shape_data(const Immersion& m, const Vec& u, double orientation = 1.0,
                     const Tolerances& tol = default_tolerances);

/// Coefficients c with sum c_i d_i phi equal to the tangential part of v.
Vec tangent_coefficients(const Immersion& m, const Vec& u, const Vec& v);

/// Metric inner product of tangent coefficient vectors.
double tangent_inner(const Mat& metric, const Vec& a, const Vec& b);

} // namespace cpd
