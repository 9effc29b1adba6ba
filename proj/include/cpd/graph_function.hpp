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

#include <functional>
#include <vector>

namespace cpd {

/// Scalar function F on a rectangle of the flat base R^n (n <= 3) with
/// gradient, Hessian, Laplacian and third-order evaluators. Missing callbacks
/// fall back to central differences of the next lower order.
class GraphFunction {
public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HessFn = std::function<Mat(const Vec&)>;
    using ThirdFn = std::function<std::vector<Mat>(const Vec&)>; // [k](i, j) = F_ijk

    GraphFunction() = default;
    GraphFunction(ValueFn value, std::vector<Interval> domain, double fd_step = 1e-4);

    GraphFunction& with_gradient(GradFn fn);
    GraphFunction& with_hessian(HessFn fn);
    GraphFunction& with_third(ThirdFn fn);
    /// Optional independent evaluator for (1/2) Laplacian(|grad F|^2).
    GraphFunction& with_half_laplacian_grad_sq(ValueFn fn);
    GraphFunction& with_name(std::string name);

    int dim() const { return static_cast<int>(domain_.size()); }
    const std::vector<Interval>& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    double fd_step() const { return fd_step_; }
    bool has_closed_gradient() const { return static_cast<bool>(grad_); }
    bool has_closed_hessian() const { return static_cast<bool>(hess_); }
    bool has_closed_third() const { return static_cast<bool>(third_); }

    double value(const Vec& x) const { return value_(x); }
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;
    double laplacian(const Vec& x) const { return hessian(x).trace(); }
    Vec grad_laplacian(const Vec& x) const;
    double half_laplacian_grad_sq(const Vec& x) const;

    /// Copy keeping only the value callback.
    GraphFunction finite_difference_copy() const;

private:
    ValueFn value_;
    GradFn grad_;
    HessFn hess_;
    ThirdFn third_;
    ValueFn half_lap_;
    std::vector<Interval> domain_;
    double fd_step_ = 1e-4;
    std::string name_ = "F";
};

} // namespace cpd
