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
#include <cpd/construct.hpp>
#include <cpd/error.hpp>
#include <cpd/numdiff.hpp>

#include <cmath>
#include <sstream>

namespace cpd {

std::pair<Vec, Vec> orthogonal_plane_basis(const Vec& x0)
{
    const Eigen::Vector3d a = x0.head<3>().normalized();
    Eigen::Vector3d seed = std::abs(a.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d e1 = (seed - seed.dot(a) * a).normalized();
    Eigen::Vector3d e2 = a.cross(e1);
    return {Vec(e1), Vec(e2)};
}

Immersion cpd_surface_r3(const PlaneCurve& gamma, const ProfileCurve& beta, const Vec& x0_in,
                         const Tolerances& tol)
{
    if (x0_in.size() != 3)
        throw Error(ErrorKind::Precondition, "cpd_surface_r3 needs a vector in R^3");
    const Vec x0 = x0_in.normalized();
    beta.validate(tol);
    const auto [e1, e2] = orthogonal_plane_basis(x0);
    auto embed = [e1 = e1, e2 = e2](const Vec2& v) { return Vec(v.x() * e1 + v.y() * e2); };

    const double margin = gamma.has_closed_form() || gamma.periodic() ? 0.0 : 2.0 * gamma.fd_step() * 1.0001;
    const Interval sdom{gamma.domain().lo + margin, gamma.domain().hi - margin};
    const Interval tdom = beta.domain();

    // Immersion condition 1 - f kappa != 0 on a sampling grid.
    constexpr int kSamples = 65;
    for (int i = 0; i < kSamples; ++i) {
        const double s = sdom.lo + sdom.length() * i / (kSamples - 1);
        const double kappa = frenet_frame(gamma, s).curvature;
        double prev = 0.0;
        for (int j = 0; j < kSamples; ++j) {
            const double t = tdom.lo + tdom.length() * j / (kSamples - 1);
            const double w = 1.0 - beta.f(t) * kappa;
            if (std::abs(w) < 1e-10 || (j > 0 && w * prev < 0)) {
                std::ostringstream os;
                os << "1 - f kappa vanishes near (s,t)=(" << s << ", " << t << ")";
                throw Error(ErrorKind::FocalSet, os.str());
            }
            prev = w;
        }
    }

    struct Data {
        PlaneCurve gamma;
        ProfileCurve beta;
        Vec x0;
    };
    auto d = std::make_shared<Data>(Data{gamma, beta, x0});

    auto eval = [d, embed](const Vec& u) {
        const double s = u[0], t = u[1];
        const FrenetFrame fr = frenet_frame(d->gamma, s);
        return Vec(embed(d->gamma.point(s)) + d->beta.f(t) * embed(fr.normal) + d->beta.g(t) * d->x0);
    };
    auto first = [d, embed](const Vec& u) {
        const double s = u[0], t = u[1];
        const FrenetFrame fr = frenet_frame(d->gamma, s);
        Mat p(3, 2);
        p.col(0) = (1.0 - d->beta.f(t) * fr.curvature) * embed(fr.tangent);
        p.col(1) = d->beta.fp(t) * embed(fr.normal) + d->beta.gp(t) * d->x0;
        return p;
    };
    auto second = [d, embed](const Vec& u) {
        const double s = u[0], t = u[1];
        const FrenetFrame fr = frenet_frame(d->gamma, s);
        const double k = fr.curvature, kp = d->gamma.curvature_derivative(s);
        const double f = d->beta.f(t), fp = d->beta.fp(t);
        const Vec T = embed(fr.tangent), N = embed(fr.normal);
        std::vector<Vec> out(4);
        out[0] = -f * kp * T + (1.0 - f * k) * k * N;
        out[1] = out[2] = -fp * k * T;
        out[3] = d->beta.fpp(t) * N + d->beta.gpp(t) * d->x0;
        return out;
    };
    auto normal = [d, embed](const Vec& u) {
        const FrenetFrame fr = frenet_frame(d->gamma, u[0]);
        return Vec(-d->beta.gp(u[1]) * embed(fr.normal) + d->beta.fp(u[1]) * d->x0);
    };
    Immersion m(eval, {sdom, tdom}, WarpedProduct::euclidean(3));
    m.with_first(first).with_second(second).with_normal(normal).with_name("cpd-surface");
    return m;
}

Mat ParametricPatch::partials(const Vec& x) const
{
    if (first)
        return first(x);
    const Vec p0 = eval(x);
    Mat p(p0.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        p.col(i) = partial(eval, x, static_cast<int>(i), {.h = fd_step, .richardson = true});
    return p;
}

Immersion cpd_hypersurface(const ParametricPatch& base, std::function<Vec(const Vec&)> eta,
                           const ProfileCurve& beta, const ConformalField& field,
                           const Tolerances& tol)
{
    beta.validate(tol);
    const int k = static_cast<int>(base.domain.size()); // dim L = n - 1
    const int ambient_dim = field.dim();
    if (k + 2 != ambient_dim)
        throw Error(ErrorKind::Precondition, "base must have codimension two in the ambient space");

    // Preconditions on a sampling lattice of L.
    const int per_axis = k == 1 ? 33 : (k == 2 ? 9 : 5);
    int total = 1;
    for (int i = 0; i < k; ++i)
        total *= per_axis;
    for (int idx = 0; idx < total; ++idx) {
        Vec x(k);
        for (int i = 0, r = idx; i < k; ++i, r /= per_axis) {
            const Interval& iv = base.domain[static_cast<size_t>(i)];
            x[i] = iv.lo + iv.length() * (r % per_axis) / (per_axis - 1);
        }
        const Vec p = base.eval(x);
        if (field.norm(p) < tol.eps_field)
            throw Error(ErrorKind::ZeroField, "field vanishes on the base");
        const Vec xh = field.unit(p);
        const Mat P = base.partials(x);
        const Vec e = eta(x);
        for (int i = 0; i < k; ++i) {
            const double c = xh.dot(P.col(i)) / P.col(i).norm();
            if (std::abs(c) > std::max(tol.orth, 1e-7))
                throw Error(ErrorKind::Precondition, "base is not orthogonal to the field");
            if (std::abs(e.dot(P.col(i))) / P.col(i).norm() > 1e-7)
                throw Error(ErrorKind::Precondition, "eta is not normal to the base");
        }
        if (std::abs(e.norm() - 1.0) > 1e-7 || std::abs(e.dot(xh)) > 1e-7)
            throw Error(ErrorKind::Precondition, "eta must be a unit vector tangent to the leaf");
    }

    struct Data {
        ParametricPatch base;
        std::function<Vec(const Vec&)> eta;
        ProfileCurve beta;
        ConformalField field;
        int k;
    };
    auto d = std::make_shared<Data>(Data{base, std::move(eta), beta, field, k});

    auto eval = [d](const Vec& u) {
        const Vec x = u.head(d->k);
        const double t = u[d->k];
        const Vec p = d->base.eval(x);
        return Vec(p + d->beta.f(t) * d->eta(x) + d->beta.g(t) * d->field.unit(p));
    };
    auto first = [d](const Vec& u) {
        const Vec x = u.head(d->k);
        const double t = u[d->k];
        const Vec p = d->base.eval(x);
        const Mat P = d->base.partials(x);
        const double f = d->beta.f(t), g = d->beta.g(t);
        const double scale = d->field.phi(p) / d->field.norm(p);
        Mat out(p.size(), d->k + 1);
        for (int i = 0; i < d->k; ++i) {
            const Vec eta_i = partial(d->eta, x, i, {.h = d->base.fd_step, .richardson = true});
            out.col(i) = P.col(i) + f * eta_i + g * scale * P.col(i);
        }
        out.col(d->k) = d->beta.fp(t) * d->eta(x) + d->beta.gp(t) * d->field.unit(p);
        return out;
    };
    auto normal = [d](const Vec& u) {
        const Vec x = u.head(d->k);
        const double t = u[d->k];
        const Vec p = d->base.eval(x);
        return Vec(-d->beta.gp(t) * d->eta(x) + d->beta.fp(t) * d->field.unit(p));
    };
    std::vector<Interval> dom = base.domain;
    dom.push_back(beta.domain());
    Immersion m(eval, dom, WarpedProduct::euclidean(ambient_dim), 1e-4);
    m.with_first(first).with_normal(normal).with_name("cpd-hypersurface");
    return m;
}

Immersion graph_in_warped_product(const GraphFunction& f, const WarpedProduct& ambient)
{
    if (f.dim() != ambient.base_dim())
        throw Error(ErrorKind::Precondition, "graph function dimension must match the base");
    const int n = f.dim();
    auto eval = [f, n](const Vec& x) {
        Vec p(n + 1);
        p[0] = f.value(x);
        p.tail(n) = x;
        return p;
    };
    auto first = [f, n](const Vec& x) {
        Mat p = Mat::Zero(n + 1, n);
        p.row(0) = f.gradient(x).transpose();
        p.bottomRows(n).setIdentity();
        return p;
    };
    auto second = [f, n](const Vec& x) {
        const Mat h = f.hessian(x);
        std::vector<Vec> out(static_cast<size_t>(n * n), Vec::Zero(n + 1));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[static_cast<size_t>(i * n + j)][0] = h(i, j);
        return out;
    };
    auto normal = [f, n, ambient](const Vec& x) {
        const double r = ambient.rho(f.value(x));
        Vec xi(n + 1);
        xi[0] = r * r;
        xi.tail(n) = -f.gradient(x);
        return xi;
    };
    Immersion m(eval, f.domain(), ambient, f.fd_step());
    m.with_first(first).with_second(second).with_normal(normal).with_name("graph-" + f.name());
    return m;
}

ProjectionFrame projection_frame(const Immersion& m, const ConformalField& field, const Vec& u,
                                 double orientation, const Tolerances& tol)
{
    const WarpedProduct& amb = m.ambient();
    ProjectionFrame fr;
    const Vec p = m.point(u);
    fr.x = field.eval(p);
    const double xnorm = amb.norm(p, fr.x);
    if (!(xnorm > tol.eps_field))
        throw Error(ErrorKind::ZeroField, "field vanishes on the hypersurface");
    fr.xi = (orientation < 0 ? -1.0 : 1.0) * m.normal(u);
    const double xn = amb.inner(p, fr.x, fr.xi);
    fr.x_tangent = fr.x - xn * fr.xi;
    const double tnorm = amb.norm(p, fr.x_tangent);
    if (!(tnorm > tol.eps_transversal_rel * xnorm))
        throw Error(ErrorKind::Transversality, "field is normal to the hypersurface (X^T = 0)");
    fr.t = fr.x_tangent / tnorm;
    fr.cos_theta = std::clamp(xn / xnorm, -1.0, 1.0);
    // atan2 keeps precision near 0 and pi.
    fr.theta = std::atan2(tnorm / xnorm, xn / xnorm);
    fr.t_coeff = tangent_coefficients(m, u, fr.t);
    fr.near_half_pi = std::abs(fr.cos_theta) < tol.eps_costheta;
    return fr;
}

GradientRelations gradient_relations(const GraphFunction& f, const WarpedProduct& ambient, const Vec& x)
{
    GradientRelations out;
    const double fx = f.value(x);
    const double r = ambient.rho(fx);
    const Vec grad = f.gradient(x);
    const double gf2 = grad.squaredNorm();
    out.norm_grad_f = std::sqrt(gf2);
    const double gh2 = gf2 / (gf2 + r * r);
    out.norm_grad_h = std::sqrt(gh2);
    out.cos_theta = r / std::sqrt(r * r + gf2);
    out.critical_point = gf2 == 0.0;
    if (gh2 >= 1.0)
        throw Error(ErrorKind::Inconsistency, "|grad h| >= 1");
    out.norm_grad_f_from_h = std::sqrt(r * r * gh2 / (1.0 - gh2));

    // Independent route: tangential part of d_t on the immersed graph.
    const Immersion m = graph_in_warped_product(f, ambient);
    const Vec p = m.point(x);
    const Vec xi = m.normal(x);
    Vec dt = Vec::Zero(ambient.dim());
    dt[0] = 1.0;
    const Vec tang = dt - ambient.inner(p, dt, xi) * xi;
    out.norm_grad_h_tangent = ambient.norm(p, tang);
    if (out.norm_grad_h_tangent >= 1.0 + 1e-12)
        throw Error(ErrorKind::Inconsistency, "|grad h| >= 1 on the immersed graph");
    return out;
}

} // namespace cpd
