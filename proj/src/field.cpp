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
#include <cpd/error.hpp>
#include <cpd/field.hpp>

#include <cmath>

namespace cpd {

ConformalField ConformalField::constant(Vec direction)
{
    if (!(direction.norm() > 0.0))
        throw Error(ErrorKind::ZeroField, "constant field must be non-null");
    ConformalField f;
    f.kind_ = Kind::Constant;
    f.data_ = std::move(direction);
    f.ambient_ = WarpedProduct::euclidean(static_cast<int>(f.data_.size()));
    return f;
}

ConformalField ConformalField::radial(Vec center)
{
    ConformalField f;
    f.kind_ = Kind::Radial;
    f.data_ = std::move(center);
    f.ambient_ = WarpedProduct::euclidean(static_cast<int>(f.data_.size()));
    return f;
}

ConformalField ConformalField::warped(const WarpedProduct& ambient)
{
    ConformalField f;
    f.kind_ = Kind::Warped;
    f.data_ = Vec::Zero(ambient.dim());
    f.data_[0] = 1.0;
    f.ambient_ = ambient;
    return f;
}

Vec ConformalField::eval(const Vec& p) const
{
    switch (kind_) {
    case Kind::Constant: return data_;
    case Kind::Radial: return p - data_;
    case Kind::Warped: return ambient_.rho(p[0]) * data_;
    }
    return data_;
}

double ConformalField::phi(const Vec& p) const
{
    switch (kind_) {
    case Kind::Constant: return 0.0;
    case Kind::Radial: return 1.0;
    case Kind::Warped: return ambient_.rho_prime(p[0]);
    }
    return 0.0;
}

double ConformalField::norm(const Vec& p) const
{
    switch (kind_) {
    case Kind::Constant: return data_.norm();
    case Kind::Radial: return (p - data_).norm();
    case Kind::Warped: return ambient_.rho(p[0]);
    }
    return 0.0;
}

Vec ConformalField::unit(const Vec& p) const
{
    const double n = norm(p);
    if (!(n > 1e-12))
        throw Error(ErrorKind::ZeroField, "conformal field vanishes");
    return eval(p) / n;
}

double ConformalField::height(const Vec& p) const
{
    switch (kind_) {
    case Kind::Constant: return p.dot(data_) / data_.norm();
    case Kind::Radial: return (p - data_).norm();
    case Kind::Warped: return p[0];
    }
    return 0.0;
}

double ConformalField::rho_of_height(double h) const
{
    switch (kind_) {
    case Kind::Constant: return data_.norm();
    case Kind::Radial: return h;
    case Kind::Warped: return ambient_.rho(h);
    }
    return 0.0;
}

double ConformalField::conformal_residual(const WarpedProduct& ambient, const Vec& p, const Vec& y,
                                          double h) const
{
    const Vec dx = (eval(p + h * y) - eval(p - h * y)) / (2.0 * h);
    const Vec cov = dx + ambient.christoffel(p, y, eval(p));
    return ambient.norm(p, cov - phi(p) * y);
}

} // namespace cpd
