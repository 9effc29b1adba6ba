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
#include <cpd/graph_function.hpp>
#include <cpd/numdiff.hpp>

#include <algorithm>

namespace cpd {

GraphFunction::GraphFunction(ValueFn value, std::vector<Interval> domain, double fd_step)
    : value_(std::move(value)), domain_(std::move(domain)), fd_step_(fd_step)
{
}

GraphFunction& GraphFunction::with_gradient(GradFn fn)
{
    grad_ = std::move(fn);
    return *this;
}
GraphFunction& GraphFunction::with_hessian(HessFn fn)
{
    hess_ = std::move(fn);
    return *this;
}
GraphFunction& GraphFunction::with_third(ThirdFn fn)
{
    third_ = std::move(fn);
    return *this;
}
GraphFunction& GraphFunction::with_half_laplacian_grad_sq(ValueFn fn)
{
    half_lap_ = std::move(fn);
    return *this;
}
GraphFunction& GraphFunction::with_name(std::string name)
{
    name_ = std::move(name);
    return *this;
}

Vec GraphFunction::gradient(const Vec& x) const
{
    if (grad_)
        return grad_(x);
    Vec g(dim());
    for (int i = 0; i < dim(); ++i)
        g[i] = partial(value_, x, i, {.h = fd_step_, .richardson = true});
    return g;
}

Mat GraphFunction::hessian(const Vec& x) const
{
    if (hess_)
        return hess_(x);
    const double h = grad_ ? fd_step_ : std::max(10.0 * fd_step_, 1e-3);
    Mat H(dim(), dim());
    auto grad = [this](const Vec& y) { return gradient(y); };
    for (int i = 0; i < dim(); ++i)
        H.col(i) = partial(grad, x, i, {.h = h, .richardson = true});
    return 0.5 * (H + H.transpose());
}

Vec GraphFunction::grad_laplacian(const Vec& x) const
{
    Vec out(dim());
    if (third_) {
        const auto t = third_(x);
        for (int k = 0; k < dim(); ++k)
            out[k] = t[static_cast<size_t>(k)].trace();
        return out;
    }
    const double h = hess_ ? fd_step_ : grad_ ? std::max(10.0 * fd_step_, 1e-3)
                                              : std::max(100.0 * fd_step_, 1e-2);
    auto lap = [this](const Vec& y) { return laplacian(y); };
    for (int k = 0; k < dim(); ++k)
        out[k] = partial(lap, x, k, {.h = h, .richardson = true});
    return out;
}

double GraphFunction::half_laplacian_grad_sq(const Vec& x) const
{
    if (half_lap_)
        return half_lap_(x);
    const double h = grad_ ? std::max(10.0 * fd_step_, 1e-3) : std::max(100.0 * fd_step_, 1e-2);
    auto q = [this](const Vec& y) { return 0.5 * gradient(y).squaredNorm(); };
    double sum = 0.0;
    for (int k = 0; k < dim(); ++k) {
        Vec y = x;
        auto line = [&](double t) {
            y[k] = t;
            return q(y);
        };
        sum += derivative(line, x[k], 2, {.h = h, .richardson = true});
    }
    return sum;
}

GraphFunction GraphFunction::finite_difference_copy() const
{
    GraphFunction copy(value_, domain_, fd_step_);
    copy.name_ = name_ + "-fd";
    return copy;
}

} // namespace cpd
