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

#include <Eigen/Dense>

#include <limits>

namespace cpd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Ambient space I x_rho R^n in coordinates (t, x^1, ..., x^n) with metric
/// dt^2 + rho(t)^2 |dx|^2. The Euclidean space R^{n+1} is the flat case
/// rho = 1, where coordinates are used as-is and the t slot has no special role.
/// Every inner product and covariant derivative in the library goes through here.
class WarpedProduct {
public:
    static WarpedProduct euclidean(int ambient_dim);
    static WarpedProduct warped(int base_dim, RealFn rho, RealFn rho_prime,
                                Interval interval = {-std::numeric_limits<double>::infinity(),
                                                     std::numeric_limits<double>::infinity()});

    int dim() const { return base_dim_ + 1; }
    int base_dim() const { return base_dim_; }
    bool is_flat() const { return flat_; }
    const Interval& interval() const { return interval_; }

    double rho(double t) const { return flat_ ? 1.0 : rho_(t); }
    double rho_prime(double t) const { return flat_ ? 0.0 : rho_prime_(t); }

    Mat gram(const Vec& p) const;
    double inner(const Vec& p, const Vec& a, const Vec& b) const;
    double norm(const Vec& p, const Vec& a) const;

    /// Gamma(v, w)^k = Gamma^k_ab v^a w^b, so that the covariant derivative of a
    /// vector field W along a curve c is dW/ds + christoffel(c, c', W).
    Vec christoffel(const Vec& p, const Vec& v, const Vec& w) const;

    /// Throws Domain when p[0] is outside the interval or rho(p[0]) <= 0.
    void check_point(const Vec& p) const;

private:
    int base_dim_ = 2;
    bool flat_ = true;
    RealFn rho_;
    RealFn rho_prime_;
    Interval interval_{-std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
};

} // namespace cpd
