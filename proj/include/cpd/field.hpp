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

namespace cpd {

/// Closed conformal vector field X (covariant derivative along Y equals phi Y).
/// Three classes are supported: constant (phi = 0), radial about a center
/// (phi = 1) and rho(t) d_t on a warped product (phi = rho'(t)).
///
/// Each class comes with its warped-product model: a height function h whose
/// level sets are the leaves orthogonal to X, and |X| as a function of h.
class ConformalField {
public:
    enum class Kind { Constant, Radial, Warped };

    static ConformalField constant(Vec direction);
    static ConformalField radial(Vec center);
    static ConformalField warped(const WarpedProduct& ambient);

    Kind kind() const { return kind_; }
    int dim() const { return static_cast<int>(data_.size()); }

    Vec eval(const Vec& p) const;
    double phi(const Vec& p) const;
    double norm(const Vec& p) const;
    Vec unit(const Vec& p) const;

    /// Leaf coordinate: <p, X0>/|X0|, |p - c|, or t.
    double height(const Vec& p) const;
    /// |X| on the leaf of height h.
    double rho_of_height(double h) const;

    /// |cov_Y X - phi Y| at p, with the derivative of X taken by central differences.
    double conformal_residual(const WarpedProduct& ambient, const Vec& p, const Vec& y,
                              double h = 1e-5) const;

private:
    Kind kind_ = Kind::Constant;
    Vec data_; // direction or center
    WarpedProduct ambient_;
};

} // namespace cpd
