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
#include <cpd/immersion.hpp>
#include <cpd/linalg.hpp>
#include <cpd/numdiff.hpp>

#include <cmath>
#include <sstream>

namespace cpd {

namespace {

std::string describe(const Vec& u)
{
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < u.size(); ++i)
        os << (i ? ", " : "") << u[i];
    os << ")";
    return os.str();
}

Vec cofactor_normal(const Mat& p)
{
    const auto m = p.rows();
    Vec nu(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        Mat minor(m - 1, m - 1);
        for (Eigen::Index r = 0, rr = 0; r < m; ++r) {
            if (r == k)
                continue;
            minor.row(rr++) = p.row(r);
        }
        nu[k] = ((k % 2) ? -1.0 : 1.0) * minor.determinant();
    }
    return nu;
}

} // namespace

Immersion::Immersion(EvalFn eval, std::vector<Interval> domain, WarpedProduct ambient, double fd_step)
    : eval_(std::move(eval)), domain_(std::move(domain)), ambient_(std::move(ambient)), fd_step_(fd_step)
{
    if (param_dim() + 1 != ambient_.dim())
        throw Error(ErrorKind::Precondition, "immersion must have codimension one");
}

Immersion& Immersion::with_first(FirstFn fn)
{
    first_ = std::move(fn);
    return *this;
}
Immersion& Immersion::with_second(SecondFn fn)
{
    second_ = std::move(fn);
    return *this;
}
Immersion& Immersion::with_normal(NormalFn fn)
{
    normal_ = std::move(fn);
    return *this;
}
Immersion& Immersion::with_name(std::string name)
{
    name_ = std::move(name);
    return *this;
}

double Immersion::step(int i) const
{
    const double extent = domain_[static_cast<size_t>(i)].length();
    return fd_step_ * (std::isfinite(extent) ? std::max(1.0, extent) : 1.0);
}

Vec Immersion::point(const Vec& u) const { return eval_(u); }

Mat Immersion::first(const Vec& u) const
{
    if (first_)
        return first_(u);
    const int n = param_dim();
    Mat p(ambient_dim(), n);
    for (int i = 0; i < n; ++i)
        p.col(i) = partial(eval_, u, i, {.h = step(i), .richardson = true});
    return p;
}

std::vector<Vec> Immersion::second(const Vec& u) const
{
    if (second_)
        return second_(u);
    const int n = param_dim();
    std::vector<Vec> out(static_cast<size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Vec v;
            if (first_) {
                auto col = [&](const Vec& x) { return Vec(first_(x).col(j)); };
                v = partial(col, u, i, {.h = step(i), .richardson = true});
            } else {
                const double h = std::max(step(i), step(j)) * 10.0;
                v = second_partial(eval_, u, i, j, {.h = h, .richardson = true});
            }
            out[static_cast<size_t>(i * n + j)] = v;
            out[static_cast<size_t>(j * n + i)] = v;
        }
    }
    return out;
}

Vec Immersion::normal(const Vec& u) const
{
    const Vec p = point(u);
    Vec xi;
    if (normal_) {
        xi = normal_(u);
    } else {
        const Vec nu = cofactor_normal(first(u));
        xi = ambient_.gram(p).ldlt().solve(nu);
    }
    const double len = ambient_.norm(p, xi);
    if (!(len > 0.0))
        throw Error(ErrorKind::ImmersionDegeneracy, "normal vanishes at u=" + describe(u));
    return xi / len;
}

Immersion Immersion::finite_difference_copy() const
{
    Immersion copy(eval_, domain_, ambient_, fd_step_);
    copy.name_ = name_ + "-fd";
    if (normal_) {
        // Keep the orientation of the closed-form normal but not its values.
        auto reference = normal_;
        auto self = copy;
        copy.normal_ = [self, reference](const Vec& u) {
            Vec xi = self.normal(u);
            if (self.ambient().inner(self.point(u), xi, reference(u)) < 0)
                xi = -xi;
            return xi;
        };
    }
    return copy;
}

FundamentalForms fundamental_forms(const Immersion& m, const Vec& u, const Vec& xi, const Tolerances& tol)
{
    const WarpedProduct& amb = m.ambient();
    const Vec p = m.point(u);
    amb.check_point(p);
    const Mat P = m.first(u);
    const int n = m.param_dim();
    FundamentalForms ff;
    ff.metric.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            ff.metric(i, j) = amb.inner(p, P.col(i), P.col(j));
    const double scale = ff.metric.diagonal().maxCoeff();
    const double det = ff.metric.determinant();
    if (!(det > tol.eps_det * std::pow(std::max(scale, 1e-300), n)))
        throw Error(ErrorKind::ImmersionDegeneracy, "metric is degenerate at u=" + describe(u));
    const Eigen::JacobiSVD<Mat> svd(ff.metric);
    const Vec sv = svd.singularValues();
    if (sv[0] > tol.cond_max * sv[sv.size() - 1])
        throw Error(ErrorKind::ImmersionDegeneracy, "metric is ill-conditioned at u=" + describe(u));

    if (std::abs(amb.norm(p, xi) - 1.0) > 1e-6)
        throw Error(ErrorKind::Precondition, "normal is not unit length");
    for (int i = 0; i < n; ++i) {
        const double c = amb.inner(p, xi, P.col(i)) / std::sqrt(ff.metric(i, i));
        if (std::abs(c) > std::max(tol.orth, 1e-6))
            throw Error(ErrorKind::Precondition, "normal is not orthogonal to the tangent space at u=" +
                                                     describe(u));
    }

    const auto second = m.second(u);
    ff.second_form.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec cov = second[static_cast<size_t>(i * n + j)] + amb.christoffel(p, P.col(i), P.col(j));
            ff.second_form(i, j) = amb.inner(p, cov, xi);
        }
    }
    ff.second_form = 0.5 * (ff.second_form + ff.second_form.transpose()).eval();
    return ff;
}

ShapeData shape_data(const Immersion& m, const Vec& u, double orientation, const Tolerances& tol)
{
    ShapeData sd;
    sd.point = m.point(u);
    sd.normal = (orientation < 0 ? -1.0 : 1.0) * m.normal(u);
    sd.partials = m.first(u);
    const FundamentalForms ff = fundamental_forms(m, u, sd.normal, tol);
    sd.metric = ff.metric;
    sd.second_form = ff.second_form;
    sd.shape_operator = ff.metric.ldlt().solve(ff.second_form);
    const GeneralizedEigen ge = generalized_eigen(ff.metric, ff.second_form);
    sd.principal_curvatures = ge.values;
    sd.principal_directions = ge.vectors;
    sd.principal_directions_ambient = sd.partials * ge.vectors;
    sd.mean_curvature = sd.shape_operator.trace();
    for (Eigen::Index k = 0; k + 1 < ge.values.size(); ++k)
        if (ge.values[k + 1] - ge.values[k] < tol.eps_umbilic)
            sd.umbilic = true;
    return sd;
}

Vec tangent_coefficients(const Immersion& m, const Vec& u, const Vec& v)
{
    const Vec p = m.point(u);
    const Mat P = m.first(u);
    const Mat G = m.ambient().gram(p);
    const Mat g = P.transpose() * G * P;
    return g.ldlt().solve(P.transpose() * G * v);
}

double tangent_inner(const Mat& metric, const Vec& a, const Vec& b) { return a.dot(metric * b); }

} // namespace cpd
