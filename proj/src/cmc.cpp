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
#include <cpd/cmc.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>

namespace cpd {

CatenaryPoint catenary_profile(double t)
{
    const double w = std::sqrt(1.0 + t * t);
    return {std::cosh(std::asinh(t)) + 1.0, std::asinh(t), t / w, 1.0 / w, 1.0 / (w * w * w), -t / (w * w * w)};
}

ProfileCurve catenary_profile_curve(Interval domain)
{
    ProfileCurve c([](double t) { return catenary_profile(t).f; }, [](double t) { return catenary_profile(t).g; },
                   domain);
    c.with_derivatives([](double t) { return catenary_profile(t).fp; },
                       [](double t) { return catenary_profile(t).fpp; },
                       [](double t) { return catenary_profile(t).gp; },
                       [](double t) { return catenary_profile(t).gpp; });
    return c;
}

PlaneCurve base_curve_for_curvature(double kappa)
{
    if (kappa == 0.0)
        return PlaneCurve::line(Vec2::Zero(), Vec2::UnitX(), {-2.0, 2.0});
    PlaneCurve c = PlaneCurve::circle(1.0 / std::abs(kappa));
    if (kappa < 0.0)
        c.with_normal_sign(-1.0);
    return c;
}

std::string to_string(ProfileClass c)
{
    switch (c) {
    case ProfileClass::Plane: return "plane";
    case ProfileClass::Cylinder: return "cylinder";
    case ProfileClass::Sphere: return "sphere";
    case ProfileClass::CatenoidType: return "catenoid-type";
    case ProfileClass::Unduloid: return "unduloid";
    case ProfileClass::Nodoid: return "nodoid";
    case ProfileClass::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

struct State {
    double f, g, p, q;
};

double bend(const State& y, double H0, double kappa) { return H0 - y.q * kappa / (1.0 - y.f * kappa); }

State rhs(const State& y, double H0, double kappa)
{
    const double k = bend(y, H0, kappa);
    return {y.p, y.q, y.q * k, -y.p * k};
}

State axpy(const State& y, double h, const State& d) { return {y.f + h * d.f, y.g + h * d.g, y.p + h * d.p, y.q + h * d.q}; }

State rk4(const State& y, double h, double H0, double kappa)
{
    const State k1 = rhs(y, H0, kappa);
    const State k2 = rhs(axpy(y, 0.5 * h, k1), H0, kappa);
    const State k3 = rhs(axpy(y, 0.5 * h, k2), H0, kappa);
    const State k4 = rhs(axpy(y, h, k3), H0, kappa);
    State out{y.f + h / 6.0 * (k1.f + 2 * k2.f + 2 * k3.f + k4.f), y.g + h / 6.0 * (k1.g + 2 * k2.g + 2 * k3.g + k4.g),
              y.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p), y.q + h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q)};
    const double n = std::hypot(out.p, out.q);
    out.p /= n;
    out.q /= n;
    return out;
}

// Quintic Hermite basis on [0, 1] and its first two derivatives.
void quintic_basis(double s, int order, double (&out)[6])
{
    static constexpr double c[6][6] = {{1, 0, 0, -10, 15, -6},  {0, 1, 0, -6, 8, -3},   {0, 0, 0.5, -1.5, 1.5, -0.5},
                                       {0, 0, 0, 0.5, -1, 0.5}, {0, 0, 0, -4, 7, -3}, {0, 0, 0, 10, -15, 6}};
    for (int b = 0; b < 6; ++b) {
        double v = 0.0;
        for (int p = 5; p >= order; --p) {
            double coef = c[b][p];
            for (int d = 0; d < order; ++d)
                coef *= p - d;
            v = v * s + coef;
        }
        out[b] = v;
    }
}

struct Dense {
    std::vector<double> t, f, fp, fpp, g, gp, gpp;

    double eval(const std::vector<double>& y, const std::vector<double>& y1, const std::vector<double>& y2, double x,
                int order) const
    {
        auto it = std::upper_bound(t.begin(), t.end(), x);
        std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - t.begin() - 1));
        i = std::min(i, t.size() - 2);
        const double h = t[i + 1] - t[i];
        double b[6];
        quintic_basis((x - t[i]) / h, order, b);
        const double v = y[i] * b[0] + h * y1[i] * b[1] + h * h * y2[i] * b[2] + h * h * y2[i + 1] * b[3] +
                         h * y1[i + 1] * b[4] + y[i + 1] * b[5];
        return v / std::pow(h, order);
    }
};

} // namespace

double ProfileSolution::lambda(std::size_t i) const
{
    const auto& s = samples[i];
    const double k = target_H - s.gp * base_kappa / (1.0 - s.f * base_kappa);
    const double fpp = s.gp * k, gpp = -s.fp * k;
    return s.gp * fpp - s.fp * gpp;
}

double ProfileSolution::mu(std::size_t i) const
{
    const auto& s = samples[i];
    return s.gp * base_kappa / (1.0 - s.f * base_kappa);
}

double ProfileSolution::max_unit_speed_error() const
{
    double e = 0.0;
    for (const auto& s : samples)
        e = std::max(e, std::abs(s.fp * s.fp + s.gp * s.gp - 1.0));
    return e;
}

double ProfileSolution::max_mean_curvature_error() const
{
    double e = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        e = std::max(e, std::abs(lambda(i) + mu(i) - target_H));
    return e;
}

ProfileCurve ProfileSolution::curve() const
{
    if (samples.size() < 2)
        throw Error(ErrorKind::Precondition, "profile solution has fewer than two samples");
    auto d = std::make_shared<Dense>();
    for (const auto& s : samples) {
        const double k = target_H - s.gp * base_kappa / (1.0 - s.f * base_kappa);
        d->t.push_back(s.t);
        d->f.push_back(s.f);
        d->fp.push_back(s.fp);
        d->fpp.push_back(s.gp * k);
        d->g.push_back(s.g);
        d->gp.push_back(s.gp);
        d->gpp.push_back(-s.fp * k);
    }
    ProfileCurve c([d](double t) { return d->eval(d->f, d->fp, d->fpp, t, 0); },
                   [d](double t) { return d->eval(d->g, d->gp, d->gpp, t, 0); },
                   {samples.front().t, samples.back().t});
    c.with_derivatives([d](double t) { return d->eval(d->f, d->fp, d->fpp, t, 1); },
                       [d](double t) { return d->eval(d->f, d->fp, d->fpp, t, 2); },
                       [d](double t) { return d->eval(d->g, d->gp, d->gpp, t, 1); },
                       [d](double t) { return d->eval(d->g, d->gp, d->gpp, t, 2); });
    return c;
}

std::string ProfileSolution::to_csv() const
{
    std::string out = "t,f,fp,g,gp\n";
    char buf[160];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.f, s.fp, s.g, s.gp);
        out += buf;
    }
    return out;
}

void ProfileSolution::write_csv(const std::string& path) const
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(ErrorKind::Export, "cannot open " + path);
    os << to_csv();
}

ProfileSolution cmc_profile_ode(double H0, double kappa, double f0, double fp0, Interval t_range, double step)
{
    if (!(std::abs(fp0) < 1.0))
        throw Error(ErrorKind::Precondition, "initial slope |f'(0)| must be below 1");
    if (std::abs(1.0 - f0 * kappa) < 1e-6)
        throw Error(ErrorKind::FocalSet, "initial point lies on the focal set (1 - f kappa = 0)");
    if (!(step > 0.0) || !(t_range.hi > t_range.lo))
        throw Error(ErrorKind::Precondition, "profile integration needs a positive step and a nonempty range");

    ProfileSolution sol;
    sol.target_H = H0;
    sol.base_kappa = kappa;
    const double t0 = std::clamp(0.0, t_range.lo, t_range.hi);
    const State start{f0, 0.0, fp0, std::sqrt(1.0 - fp0 * fp0)};

    auto sweep = [&](double end) {
        std::vector<ProfileSample> out;
        if (end == t0)
            return out;
        const int n = static_cast<int>(std::ceil(std::abs(end - t0) / step - 1e-9));
        const double h = (end - t0) / n;
        State y = start;
        for (int i = 1; i <= n; ++i) {
            const State next = rk4(y, h, H0, kappa);
            if (!std::isfinite(next.f) || std::abs(1.0 - next.f * kappa) < 1e-6) {
                sol.focal = true;
                break;
            }
            if (next.q * y.q < 0.0)
                sol.turning = true;
            y = next;
            out.push_back({i == n ? end : t0 + i * h, y.f, y.p, y.g, y.q});
        }
        return out;
    };
    std::vector<ProfileSample> back = sweep(t_range.lo);
    std::vector<ProfileSample> fwd = sweep(t_range.hi);
    sol.samples.assign(back.rbegin(), back.rend());
    sol.samples.push_back({t0, start.f, start.p, start.g, start.q});
    sol.samples.insert(sol.samples.end(), fwd.begin(), fwd.end());

    // Classification by inspection of the orbit.
    double max_p = 0.0, max_sphere = 0.0;
    bool q_sign_change = false;
    for (std::size_t i = 0; i < sol.samples.size(); ++i) {
        const auto& s = sol.samples[i];
        max_p = std::max(max_p, std::abs(s.fp));
        max_sphere = std::max(max_sphere, std::abs(sol.lambda(i) - 0.5 * H0));
        if (i > 0 && s.gp * sol.samples[i - 1].gp < 0.0)
            q_sign_change = true;
    }
    if (kappa == 0.0)
        sol.classification = H0 == 0.0 ? ProfileClass::Plane : ProfileClass::Cylinder;
    else if (max_p < 1e-8)
        sol.classification = ProfileClass::Cylinder;
    else if (H0 == 0.0)
        sol.classification = ProfileClass::CatenoidType;
    else if (max_sphere < 1e-8)
        sol.classification = ProfileClass::Sphere;
    else
        sol.classification = q_sign_change ? ProfileClass::Nodoid : ProfileClass::Unduloid;
    return sol;
}

Immersion profile_surface(const ProfileSolution& sol)
{
    Immersion m = cpd_surface_r3(base_curve_for_curvature(sol.base_kappa), sol.curve(), Vec(Vec::Unit(3, 2)));
    m.with_name("profile-" + to_string(sol.classification));
    return m;
}

ReportEntry profile_mean_curvature_check(const ProfileSolution& sol, bool finite_differences, double tol, int samples)
{
    const Immersion exact = profile_surface(sol);
    const Immersion m = finite_differences ? exact.finite_difference_copy() : exact;
    const Interval sd = m.domain()[0], td = m.domain()[1];
    const double margin = 0.02 * td.length();
    std::vector<double> res;
    std::vector<Vec> params;
    std::size_t excluded = 0;
    for (int i = 0; i < samples; ++i) {
        Vec u(2);
        u << sd.lo + 0.25 * sd.length(), td.lo + margin + (td.length() - 2 * margin) * i / std::max(1, samples - 1);
        try {
            res.push_back(std::abs(shape_data(m, u, -1.0).mean_curvature - sol.target_H));
            params.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }
    return make_entry(finite_differences ? "profile_mean_curvature_fd" : "profile_mean_curvature", res, params, tol,
                      excluded);
}

namespace {

Eigen::Vector3d v3(const Vec& v) { return v.head<3>(); }

double curve_curvature(const Vec& d1, const Vec& d2)
{
    const Eigen::Vector3d a = v3(d1), b = v3(d2);
    return a.cross(b).norm() / std::pow(a.norm(), 3);
}

std::vector<double> slice_params(const Interval& dom, int samples, bool periodic_like)
{
    std::vector<double> s;
    const double margin = periodic_like ? 0.0 : 0.01 * dom.length();
    for (int i = 0; i < samples; ++i)
        s.push_back(dom.lo + margin + (dom.length() - 2 * margin) * i / std::max(1, samples - 1));
    return s;
}

Mat surface_metric(const Immersion& m, const Vec& u)
{
    const Mat P = m.first(u);
    return P.transpose() * P;
}

} // namespace

std::vector<double> slice_ambient_curvature(const Immersion& m, double t, int samples)
{
    std::vector<double> out;
    for (double s : slice_params(m.domain()[0], samples, false)) {
        Vec u(2);
        u << s, t;
        const auto second = m.second(u);
        out.push_back(curve_curvature(m.first(u).col(0), second[0]));
    }
    return out;
}

std::vector<ReportEntry> slice_curvature_check(const Immersion& m, const std::vector<double>& t_values,
                                               const SliceCheckOptions& opt)
{
    if (m.param_dim() != 2 || m.ambient_dim() != 3 || !m.ambient().is_flat())
        throw Error(ErrorKind::Precondition, "slice checks need a surface in Euclidean R^3");
    std::vector<double> amb_res, geo_res;
    std::vector<Vec> amb_par, geo_par;
    for (double t : t_values) {
        std::vector<double> ka, kg;
        std::vector<Vec> pts;
        for (double s : slice_params(m.domain()[0], opt.samples_per_slice, false)) {
            Vec u(2);
            u << s, t;
            const Mat P = m.first(u);
            const Vec c2 = m.second(u)[0];
            const Eigen::Vector3d xi = v3(m.normal(u));
            const Eigen::Vector3d c1 = v3(P.col(0));
            ka.push_back(curve_curvature(P.col(0), c2));
            kg.push_back(v3(c2).dot(xi.cross(c1)) / std::pow(c1.norm(), 3));
            pts.push_back(u);
        }
        auto spread = [&](const std::vector<double>& v, std::vector<double>& res, std::vector<Vec>& par) {
            const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            res.push_back(*hi - *lo);
            par.push_back(pts[static_cast<std::size_t>(hi - v.begin())]);
        };
        spread(ka, amb_res, amb_par);
        spread(kg, geo_res, geo_par);
    }

    // Splitting of second fundamental forms at random interior points.
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    const Interval sd = m.domain()[0], td = m.domain()[1];
    std::vector<double> split_res, mean_res;
    std::vector<Vec> split_par;
    std::size_t excluded = 0;
    const double h = 1e-3 * std::min(sd.length(), td.length());
    for (int k = 0; k < opt.random_points; ++k) {
        Vec u(2);
        u << sd.lo + unit(rng) * sd.length(), td.lo + unit(rng) * td.length();
        try {
            // Slice in R^3, from the slice curve alone.
            auto slice = [&](double s) {
                Vec w = u;
                w[0] = s;
                return m.point(w);
            };
            const Eigen::Vector3d c1 = v3(derivative(slice, u[0], 1, {.h = h, .richardson = true}));
            const Eigen::Vector3d c2 = v3(derivative(slice, u[0], 2, {.h = h, .richardson = true}));
            const Eigen::Vector3d y = c1.normalized();
            const double speed2 = c1.squaredNorm();
            const Eigen::Vector3d alpha_bar = (c2 - c2.dot(y) * y) / speed2;

            // Slice in M, from the intrinsic connection of M.
            const Mat g = surface_metric(m, u);
            Mat dg[2];
            for (int l = 0; l < 2; ++l)
                dg[l] = partial([&](const Vec& w) { return surface_metric(m, w); }, u, l,
                                {.h = h, .richardson = true});
            Vec gamma_ss(2);
            for (int l = 0; l < 2; ++l)
                gamma_ss[l] = dg[0](0, l) - 0.5 * dg[l](0, 0);
            gamma_ss = g.ldlt().solve(gamma_ss);
            const Mat P = m.first(u);
            const Eigen::Vector3d cov = v3(P * gamma_ss);
            const Eigen::Vector3d alpha_t = (cov - cov.dot(y) * y) / g(0, 0);

            // M in R^3.
            const Vec xi_full = m.normal(u);
            const FundamentalForms ff = fundamental_forms(m, u, xi_full);
            const Eigen::Vector3d xi = v3(xi_full);
            const Eigen::Vector3d alpha = ff.second_form(0, 0) / g(0, 0) * xi;
            split_res.push_back((alpha_bar - alpha_t - alpha).norm());

            // Mean-curvature form with the unit tangent orthogonal to the slice.
            const Eigen::Vector3d tdir = xi.cross(y);
            const Vec tc = tangent_coefficients(m, u, Vec(tdir));
            const double b_tt = tc.dot(ff.second_form * tc);
            const double trace = g.ldlt().solve(ff.second_form).trace();
            mean_res.push_back((alpha_bar - alpha_t - (trace - b_tt) * xi).norm());
            split_par.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }

    std::vector<ReportEntry> out;
    out.push_back(make_entry("slice_ambient_curvature", amb_res, amb_par, opt.tol_variation));
    out.push_back(make_entry("slice_geodesic_curvature", geo_res, geo_par, opt.tol_variation));
    out.push_back(make_entry("slice_splitting", split_res, split_par, opt.tol_split, excluded));
    out.push_back(make_entry("slice_mean_splitting", mean_res, split_par, opt.tol_split, excluded));
    return out;
}

double graph_mean_curvature(const GraphFunction& f, const Vec& x)
{
    const Vec g = f.gradient(x);
    const Mat H = f.hessian(x);
    const double w2 = 1.0 + g.squaredNorm();
    const double w = std::sqrt(w2);
    return -(H.trace() / w - g.dot(H * g) / (w2 * w));
}

std::vector<double> graph_mean_curvature(const GraphFunction& f, const Grid& grid)
{
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out[k] = graph_mean_curvature(f, grid.node(k));
    return out;
}

ReportEntry bochner_residual(const GraphFunction& f, const Grid& grid, double tol)
{
    std::vector<double> res;
    std::vector<Vec> params;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec x = grid.node(k);
        const Mat H = f.hessian(x);
        const double r = f.half_laplacian_grad_sq(x) - H.squaredNorm() - f.gradient(x).dot(f.grad_laplacian(x));
        res.push_back(std::abs(r));
        params.push_back(x);
    }
    return make_entry("bochner", res, params, tol);
}

std::string to_string(DichotomyVerdict v)
{
    switch (v) {
    case DichotomyVerdict::TotallyGeodesic: return "totally_geodesic";
    case DichotomyVerdict::HypothesisNotMet: return "hypothesis_not_met";
    case DichotomyVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DichotomyReport dichotomy_check(const GraphFunction& f, const Grid& grid, const DichotomyOptions& opt)
{
    DichotomyReport rep;
    const std::size_t n = grid.size();
    std::vector<double> gn(n), lap(n);
    const Immersion m = graph_in_warped_product(f, WarpedProduct::euclidean(f.dim() + 1));
    const ConformalField field = ConformalField::warped(m.ambient());
    rep.theta_min = std::numbers::pi;
    rep.theta_max = 0.0;
    double min_extent = std::numeric_limits<double>::infinity();
    for (const auto& iv : f.domain())
        min_extent = std::min(min_extent, iv.length());
    const double h = 1e-4 * min_extent;

    for (std::size_t k = 0; k < n; ++k) {
        const Vec x = grid.node(k);
        const Vec g = f.gradient(x);
        const Mat H = f.hessian(x);
        const double w = std::sqrt(1.0 + g.squaredNorm());
        gn[k] = g.norm();
        lap[k] = H.trace();
        rep.max_hessian = std::max(rep.max_hessian, H.norm());
        rep.max_second_form = std::max(rep.max_second_form, H.norm() / w);
        const double theta = std::acos(1.0 / w);
        rep.theta_min = std::min(rep.theta_min, theta);
        rep.theta_max = std::max(rep.theta_max, theta);
        try {
            const ProjectionFrame fr = projection_frame(m, field, x);
            for (int i = 0; i < f.dim(); ++i) {
                auto tfield = [&](const Vec& y) { return projection_frame(m, field, y).t; };
                const Vec dt = partial(tfield, x, i, {.h = h, .richardson = true});
                const Vec tang = dt - dt.dot(fr.xi) * fr.xi;
                rep.max_T_derivative = std::max(rep.max_T_derivative, tang.norm());
            }
        } catch (const Error&) {
            // grad F = 0: T is undefined and the graph is a horizontal slice there.
        }
    }
    auto variance = [](const std::vector<double>& v) {
        double mean = 0.0, var = 0.0;
        for (double a : v)
            mean += a;
        mean /= static_cast<double>(v.size());
        for (double a : v)
            var += (a - mean) * (a - mean);
        return var / static_cast<double>(v.size());
    };
    rep.grad_norm_variance = variance(gn);
    rep.laplacian_variance = variance(lap);

    char buf[200];
    if (rep.grad_norm_variance > opt.tol_variance || rep.laplacian_variance > opt.tol_variance) {
        rep.verdict = DichotomyVerdict::HypothesisNotMet;
        std::snprintf(buf, sizeof buf, "variance of |grad F| = %.3e, variance of Lap F = %.3e (tolerance %.1e)",
                      rep.grad_norm_variance, rep.laplacian_variance, opt.tol_variance);
        rep.notes.emplace_back(buf);
        return rep;
    }
    if (rep.max_hessian <= opt.tol_hessian && rep.max_second_form <= opt.tol_hessian &&
        rep.max_T_derivative <= opt.tol_hessian) {
        rep.verdict = DichotomyVerdict::TotallyGeodesic;
        rep.notes.emplace_back("flat base: the graph is a plane, which is also a cylinder over a line");
    } else {
        rep.verdict = DichotomyVerdict::Inconclusive;
        std::snprintf(buf, sizeof buf, "hypotheses hold but max |Hess F| = %.3e", rep.max_hessian);
        rep.notes.emplace_back(buf);
    }
    return rep;
}

} // namespace cpd
