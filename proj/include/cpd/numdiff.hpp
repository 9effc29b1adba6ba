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

#include <cpd/error.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>

namespace cpd {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

struct DiffOptions {
    double h = 1e-4;
    bool richardson = false;
    std::optional<Interval> domain;
};

namespace detail {

inline void check_stencil(const DiffOptions& opt, double x, double reach)
{
    if (opt.domain && (!opt.domain->contains(x - reach) || !opt.domain->contains(x + reach)))
        throw Error(ErrorKind::Domain, "difference stencil [" + std::to_string(x - reach) + ", " +
                                           std::to_string(x + reach) + "] leaves the domain");
}

template <class Fn>
auto central(Fn& fn, double x, int order, double h)
{
    if (order == 1)
        return ((fn(x + h) - fn(x - h)) / (2.0 * h)).eval();
    return ((fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h)).eval();
}

// Lets the same stencil code serve double- and Eigen-valued functions.
struct ScalarBox {
    double v;
    ScalarBox eval() const { return *this; }
};
inline ScalarBox operator+(ScalarBox a, ScalarBox b) { return {a.v + b.v}; }
inline ScalarBox operator-(ScalarBox a, ScalarBox b) { return {a.v - b.v}; }
inline ScalarBox operator*(double s, ScalarBox a) { return {s * a.v}; }
inline ScalarBox operator/(ScalarBox a, double s) { return {a.v / s}; }

} // namespace detail

/// Central-difference derivative of order 1 or 2, second-order accurate.
/// With `richardson` set, one extrapolation step lifts it to fourth order.
/// Works for double- and Eigen-vector-valued functions.
template <class Fn>
auto derivative(Fn&& fn, double x, int order, const DiffOptions& opt = {})
{
    if (order != 1 && order != 2)
        throw Error(ErrorKind::Precondition, "derivative order must be 1 or 2");
    detail::check_stencil(opt, x, opt.h);
    using R = std::decay_t<decltype(fn(x))>;
    if constexpr (std::is_arithmetic_v<R>) {
        auto boxed = [&](double t) { return detail::ScalarBox{fn(t)}; };
        auto coarse = detail::central(boxed, x, order, opt.h);
        if (!opt.richardson)
            return coarse.v;
        auto fine = detail::central(boxed, x, order, 0.5 * opt.h);
        return (4.0 * fine.v - coarse.v) / 3.0;
    } else {
        auto coarse = detail::central(fn, x, order, opt.h);
        if (!opt.richardson)
            return R(coarse);
        auto fine = detail::central(fn, x, order, 0.5 * opt.h);
        return R((4.0 * fine - coarse) / 3.0);
    }
}

/// Partial derivative d/du_i of a function of a parameter vector.
template <class Fn>
auto partial(Fn&& fn, const Eigen::VectorXd& u, int i, const DiffOptions& opt = {})
{
    auto line = [&](double t) {
        Eigen::VectorXd v = u;
        v[i] = t;
        return fn(v);
    };
    return derivative(line, u[i], 1, opt);
}

/// Second partial d^2/(du_i du_j); i == j reduces to the 1D second derivative.
template <class Fn>
auto second_partial(Fn&& fn, const Eigen::VectorXd& u, int i, int j, const DiffOptions& opt = {})
{
    if (i == j) {
        auto line = [&](double t) {
            Eigen::VectorXd v = u;
            v[i] = t;
            return fn(v);
        };
        return derivative(line, u[i], 2, opt);
    }
    using R = std::decay_t<decltype(fn(u))>;
    // Returns R so Eigen expressions never outlive their temporaries.
    auto mixed = [&](double h) -> R {
        auto at = [&](double si, double sj) {
            Eigen::VectorXd v = u;
            v[i] += si * h;
            v[j] += sj * h;
            return fn(v);
        };
        return R((at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h));
    };
    R coarse = mixed(opt.h);
    if (!opt.richardson)
        return coarse;
    R fine = mixed(0.5 * opt.h);
    return R((4.0 * fine - coarse) / 3.0);
}

} // namespace cpd
