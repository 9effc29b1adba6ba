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
#include <cpd/ambient.hpp>
#include <cpd/error.hpp>

#include <cmath>
#include <string>

namespace cpd {

WarpedProduct WarpedProduct::euclidean(int ambient_dim)
{
    if (ambient_dim < 2)
        throw Error(ErrorKind::Precondition, "ambient dimension must be at least 2");
    WarpedProduct w;
    w.base_dim_ = ambient_dim - 1;
    w.flat_ = true;
    return w;
}

WarpedProduct WarpedProduct::warped(int base_dim, RealFn rho, RealFn rho_prime, Interval interval)
{
    if (base_dim < 1)
        throw Error(ErrorKind::Precondition, "base dimension must be at least 1");
    WarpedProduct w;
    w.base_dim_ = base_dim;
    w.flat_ = false;
    w.rho_ = std::move(rho);
    w.rho_prime_ = std::move(rho_prime);
    w.interval_ = interval;
    return w;
}

void WarpedProduct::check_point(const Vec& p) const
{
    if (p.size() != dim())
        throw Error(ErrorKind::Precondition, "point dimension does not match ambient");
    if (flat_)
        return;
    if (!interval_.contains(p[0]))
        throw Error(ErrorKind::Domain, "t=" + std::to_string(p[0]) + " outside warping interval");
    if (!(rho_(p[0]) > 0.0))
        throw Error(ErrorKind::Domain, "warping function not positive at t=" + std::to_string(p[0]));
}

Mat WarpedProduct::gram(const Vec& p) const
{
    Mat g = Mat::Identity(dim(), dim());
    if (!flat_) {
        const double r = rho_(p[0]);
        for (int i = 1; i < dim(); ++i)
            g(i, i) = r * r;
    }
    return g;
}

double WarpedProduct::inner(const Vec& p, const Vec& a, const Vec& b) const
{
    if (flat_)
        return a.dot(b);
    const double r = rho_(p[0]);
    return a[0] * b[0] + r * r * a.tail(base_dim_).dot(b.tail(base_dim_));
}

double WarpedProduct::norm(const Vec& p, const Vec& a) const { return std::sqrt(inner(p, a, a)); }

Vec WarpedProduct::christoffel(const Vec& p, const Vec& v, const Vec& w) const
{
    Vec out = Vec::Zero(dim());
    if (flat_)
        return out;
    const double r = rho_(p[0]);
    const double rp = rho_prime_(p[0]);
    // Gamma^t_ij = -rho rho' delta_ij, Gamma^i_tj = Gamma^i_jt = (rho'/rho) delta^i_j.
    out[0] = -r * rp * v.tail(base_dim_).dot(w.tail(base_dim_));
    out.tail(base_dim_) = (rp / r) * (v[0] * w.tail(base_dim_) + w[0] * v.tail(base_dim_));
    return out;
}

} // namespace cpd
