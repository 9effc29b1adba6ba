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
#include <cpd/verify.hpp>
#include <cpd/transnormal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpd {

namespace {

bool inside(const std::vector<Interval>& dom, const Vec& u)
{
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (!dom[i].contains(u[static_cast<Eigen::Index>(i)]))
            return false;
    return true;
}

double min_extent(const std::vector<Interval>& dom)
{
    double e = std::numeric_limits<double>::infinity();
    for (const auto& iv : dom)
        e = std::min(e, iv.length());
    return e;
}

Mat metric_at(const Immersion& m, const Vec& u)
{
    const Mat P = m.first(u);
    return P.transpose() * m.ambient().gram(m.point(u)) * P;
}

// Metric-orthonormal basis of the complement of the unit coefficient vector t.
std::vector<Vec> complement_basis(const Mat& g, const Vec& t)
{
    const Eigen::Index n = t.size();
    std::vector<Vec> basis{t};
    for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(basis.size()) < n; ++i) {
        Vec v = Vec::Unit(n, i);
        for (const Vec& b : basis)
            v -= tangent_inner(g, b, v) * b;
        const double len = std::sqrt(std::max(0.0, tangent_inner(g, v, v)));
        if (len > 1e-8 * std::sqrt(g(i, i)))
            basis.push_back(v / len);
    }
    basis.erase(basis.begin());
    return basis;
}

// Parameter gradient of the leaf height along the immersion.
Vec height_differential(const Immersion& m, const ConformalField& x, const Vec& u)
{
    const Vec p = m.point(u);
    return m.first(u).transpose() * m.ambient().gram(p) * x.unit(p);
}

} // namespace

ReportEntry check_principal_direction(const Immersion& m, const ConformalField& x, const Grid& grid, double tol,
                                      const CheckOptions& opt)
{
    std::vector<double> res;
    std::vector<Vec> params;
    std::size_t excluded = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec u = grid.node(k);
        try {
            const ProjectionFrame fr = projection_frame(m, x, u, opt.orientation, opt.tol);
            const FundamentalForms ff = fundamental_forms(m, u, fr.xi, opt.tol);
            const Vec at = ff.metric.ldlt().solve(ff.second_form * fr.t_coeff);
            const double lambda = fr.t_coeff.dot(ff.second_form * fr.t_coeff);
            const Vec r = at - lambda * fr.t_coeff;
            res.push_back(std::sqrt(std::max(0.0, tangent_inner(ff.metric, r, r))));
            params.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }
    if (res.empty())
        return skipped_entry(entry_names::principal_direction, tol, "field normal to the hypersurface at every sample");
    return make_entry(entry_names::principal_direction, res, params, tol, excluded);
}

ReportEntry check_angle_constancy(const Immersion& m, const ConformalField& x, const Grid& grid, double tol,
                                  const CheckOptions& opt)
{
    auto theta = [&](const Vec& u) { return projection_frame(m, x, u, opt.orientation, opt.tol).theta; };
    const double base_step = opt.theta_step * min_extent(m.domain());
    std::vector<double> res;
    std::vector<Vec> params;
    std::size_t excluded = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec u = grid.node(k);
        try {
            const ProjectionFrame fr = projection_frame(m, x, u, opt.orientation, opt.tol);
            const Mat g = metric_at(m, u);
            double worst = 0.0;
            for (const Vec& z : complement_basis(g, fr.t_coeff)) {
                const double h = base_step / z.cwiseAbs().maxCoeff();
                auto diff = [&](double step) {
                    return (theta(u + step * z) - theta(u - step * z)) / (2.0 * step);
                };
                const double d = (4.0 * diff(h) - diff(2.0 * h)) / 3.0;
                worst = std::max(worst, std::abs(d));
            }
            res.push_back(worst);
            params.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }
    if (res.empty())
        return skipped_entry(entry_names::angle_constancy, tol, "sin(theta) vanishes at every sample");
    return make_entry(entry_names::angle_constancy, res, params, tol, excluded);
}

ReportEntry check_T_geodesic(const Immersion& m, const ConformalField& x, const Grid& grid, double tol,
                             const CheckOptions& opt)
{
    const WarpedProduct& amb = m.ambient();
    auto frame = [&](const Vec& u) { return projection_frame(m, x, u, opt.orientation, opt.tol); };
    auto field = [&](const Vec& u) { return frame(u).t_coeff; };
    auto rk4 = [&](const Vec& u, double h) {
        const Vec k1 = field(u);
        const Vec k2 = field(u + 0.5 * h * k1);
        const Vec k3 = field(u + 0.5 * h * k2);
        const Vec k4 = field(u + h * k3);
        return Vec(u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };
    const double h = opt.geodesic_step;
    std::vector<double> res;
    std::vector<Vec> params;
    std::size_t excluded = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec u = grid.node(k);
        try {
            const ProjectionFrame fr = frame(u);
            const Vec up = rk4(u, h), um = rk4(u, -h);
            const Vec up2 = rk4(up, h), um2 = rk4(um, -h);
            for (const Vec* v : {&up, &um, &up2, &um2})
                if (!inside(m.domain(), *v))
                    throw Error(ErrorKind::Domain, "integral curve leaves the domain");
            const Vec d1 = (frame(up).t - frame(um).t) / (2.0 * h);
            const Vec d2 = (frame(up2).t - frame(um2).t) / (4.0 * h);
            const Vec p = m.point(u);
            const Vec cov = (4.0 * d1 - d2) / 3.0 + amb.christoffel(p, fr.t, fr.t);
            const Vec tang = cov - amb.inner(p, cov, fr.xi) * fr.xi;
            res.push_back(amb.norm(p, tang));
            params.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }
    if (res.empty())
        return skipped_entry(entry_names::t_geodesic, tol, "T undefined or integral curves leave the domain");
    return make_entry(entry_names::t_geodesic, res, params, tol, excluded);
}

namespace {

struct LevelSamples {
    std::vector<double> res_h, res_f;
    std::vector<Vec> par_h, par_f;
    std::size_t excluded = 0;
    std::size_t gated = 0;
};

void add_level(LevelSamples& out, const std::vector<double>& gh, const std::vector<double>& gf,
               const std::vector<Vec>& pts)
{
    if (gh.size() < 2)
        return;
    auto spread = [&](const std::vector<double>& v, std::vector<double>& res, std::vector<Vec>& par) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        res.push_back(*hi - *lo);
        par.push_back(pts[static_cast<std::size_t>(hi - v.begin())]);
    };
    spread(gh, out.res_h, out.par_h);
    spread(gf, out.res_f, out.par_f);
}

std::vector<double> level_values(const std::vector<double>& samples, int levels)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : samples)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    std::vector<double> out;
    if (!(hi > lo))
        return out;
    for (int k = 0; k < levels; ++k)
        out.push_back(lo + (hi - lo) * (k + 1) / (levels + 1));
    return out;
}

std::pair<ReportEntry, ReportEntry> level_entries(const LevelSamples& s, double tol)
{
    if (s.res_h.empty()) {
        const std::string why = s.gated > 0 ? "theta = pi/2 on the sampled level curves"
                                            : "no level curves with admissible samples";
        return {skipped_entry(entry_names::grad_h_levels, tol, why),
                skipped_entry(entry_names::grad_f_levels, tol, why)};
    }
    return {make_entry(entry_names::grad_h_levels, s.res_h, s.par_h, tol, s.excluded + s.gated),
            make_entry(entry_names::grad_f_levels, s.res_f, s.par_f, tol, s.excluded + s.gated)};
}

} // namespace

std::pair<ReportEntry, ReportEntry> check_gradient_norm_on_levels(const Immersion& m, const ConformalField& x,
                                                                  const Grid& grid, double tol,
                                                                  const CheckOptions& opt)
{
    if (m.param_dim() != 2 || grid.dim() != 2)
        return {skipped_entry(entry_names::grad_h_levels, tol, "level curves need a two-parameter surface"),
                skipped_entry(entry_names::grad_f_levels, tol, "level curves need a two-parameter surface")};
    auto height = [&](const Vec& u) { return x.height(m.point(u)); };
    std::vector<double> samples;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        try {
            samples.push_back(height(grid.node(k)));
        } catch (const Error&) {
        }
    }
    LevelSamples out;
    for (double c : level_values(samples, opt.levels)) {
        std::vector<double> gh, gf;
        std::vector<Vec> pts;
        const auto lines = marching_squares([&](const Vec2& u) { return height(Vec(u)); }, c, grid);
        for (const auto& line : lines) {
            for (const Vec2& start : line.points) {
                try {
                    Vec u = start;
                    for (int it = 0; it < 4; ++it) {
                        const double r = height(u) - c;
                        if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(c)))
                            break;
                        const Vec dh = height_differential(m, x, u);
                        u -= r * dh / dh.squaredNorm();
                    }
                    if (!inside(m.domain(), u)) {
                        ++out.excluded;
                        continue;
                    }
                    const ProjectionFrame fr = projection_frame(m, x, u, opt.orientation, opt.tol);
                    if (fr.near_half_pi) {
                        ++out.gated;
                        continue;
                    }
                    const Vec dh = height_differential(m, x, u);
                    const double gh2 = dh.dot(metric_at(m, u).ldlt().solve(dh));
                    if (!(gh2 < 1.0)) {
                        ++out.gated;
                        continue;
                    }
                    gh.push_back(std::sqrt(gh2));
                    gf.push_back(x.rho_of_height(c) * std::sqrt(gh2 / (1.0 - gh2)));
                    pts.push_back(u);
                } catch (const Error&) {
                    ++out.excluded;
                }
            }
        }
        add_level(out, gh, gf, pts);
    }
    return level_entries(out, tol);
}

std::pair<ReportEntry, ReportEntry> check_gradient_norm_on_levels(const GraphFunction& f, const WarpedProduct& w,
                                                                  const Grid& grid, double tol,
                                                                  const CheckOptions& opt)
{
    if (f.dim() != 2 || grid.dim() != 2)
        return {skipped_entry(entry_names::grad_h_levels, tol, "level curves need a planar base"),
                skipped_entry(entry_names::grad_f_levels, tol, "level curves need a planar base")};
    std::vector<double> samples;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        try {
            samples.push_back(f.value(grid.node(k)));
        } catch (const Error&) {
        }
    }
    LevelSamples out;
    for (double c : level_values(samples, opt.levels)) {
        std::vector<double> gh, gf;
        std::vector<Vec> pts;
        for (const auto& line : level_set_extract(f, c, grid)) {
            for (const Vec2& p : line.points) {
                const Vec u = p;
                try {
                    if (!inside(f.domain(), u)) {
                        ++out.excluded;
                        continue;
                    }
                    const GradientRelations rel = gradient_relations(f, w, u);
                    if (rel.critical_point || std::abs(rel.cos_theta) < opt.tol.eps_costheta) {
                        ++out.gated;
                        continue;
                    }
                    gh.push_back(rel.norm_grad_h);
                    gf.push_back(rel.norm_grad_f);
                    pts.push_back(u);
                } catch (const Error&) {
                    ++out.excluded;
                }
            }
        }
        add_level(out, gh, gf, pts);
    }
    return level_entries(out, tol);
}

ReportEntry check_gradient_relation(const GraphFunction& f, const WarpedProduct& w, const Grid& grid, double tol)
{
    std::vector<double> res;
    std::vector<Vec> params;
    std::size_t excluded = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec u = grid.node(k);
        try {
            const GradientRelations rel = gradient_relations(f, w, u);
            res.push_back(std::max(std::abs(rel.norm_grad_h - rel.norm_grad_h_tangent),
                                   std::abs(rel.norm_grad_f - rel.norm_grad_f_from_h) /
                                       std::max(1.0, rel.norm_grad_f)));
            params.push_back(u);
        } catch (const Error&) {
            ++excluded;
        }
    }
    if (res.empty())
        return skipped_entry(entry_names::gradient_relation, tol, "no admissible samples");
    return make_entry(entry_names::gradient_relation, res, params, tol, excluded);
}

void flag_inconsistency(ResidualReport& report)
{
    const char* items[] = {entry_names::principal_direction, entry_names::angle_constancy, entry_names::t_geodesic,
                           entry_names::grad_h_levels, entry_names::grad_f_levels};
    std::string passed, failed;
    for (const char* name : items) {
        const ReportEntry* e = report.find(name);
        if (!e)
            continue;
        if (e->passed())
            passed += std::string(passed.empty() ? "" : ", ") + name;
        if (e->failed())
            failed += std::string(failed.empty() ? "" : ", ") + name;
    }
    if (!passed.empty() && !failed.empty()) {
        report.inconsistent = true;
        report.notes.push_back("equivalent conditions disagree: pass {" + passed + "} vs fail {" + failed + "}");
    }
}

namespace {

Grid theorem_grid(const std::vector<Interval>& dom, const TheoremConfig& cfg)
{
    std::vector<int> counts(dom.size(), cfg.grid);
    if (cfg.grid_v > 0 && counts.size() > 1)
        counts[1] = cfg.grid_v;
    return Grid::inset(dom, counts, cfg.inset);
}

void fill_metadata(ResidualReport& r, const std::string& name, const Grid& grid, double fd_step)
{
    r.surface = name;
    r.grid_u = grid.counts.empty() ? 0 : grid.counts[0];
    r.grid_v = grid.counts.size() > 1 ? grid.counts[1] : 1;
    r.fd_step = fd_step;
}

} // namespace

ResidualReport theorem_report(const Immersion& m, const ConformalField& x, const TheoremConfig& cfg)
{
    const Grid grid = theorem_grid(m.domain(), cfg);
    ResidualReport r;
    fill_metadata(r, m.name(), grid, m.fd_step());
    r.add(check_principal_direction(m, x, grid, cfg.tol_principal, cfg.options));
    r.add(check_angle_constancy(m, x, grid, cfg.tol_angle, cfg.options));
    r.add(check_T_geodesic(m, x, grid, cfg.tol_geodesic, cfg.options));
    auto [eh, ef] = check_gradient_norm_on_levels(m, x, grid, cfg.tol_levels, cfg.options);
    r.add(std::move(eh));
    r.add(std::move(ef));
    flag_inconsistency(r);
    r.finalize();
    return r;
}

ResidualReport theorem_report(const GraphFunction& f, const WarpedProduct& w, const TheoremConfig& cfg)
{
    const Immersion m = graph_in_warped_product(f, w);
    const ConformalField x = ConformalField::warped(w);
    const Grid grid = theorem_grid(f.domain(), cfg);
    ResidualReport r;
    fill_metadata(r, m.name(), grid, f.fd_step());
    r.add(check_principal_direction(m, x, grid, cfg.tol_principal, cfg.options));
    r.add(check_angle_constancy(m, x, grid, cfg.tol_angle, cfg.options));
    r.add(check_T_geodesic(m, x, grid, cfg.tol_geodesic, cfg.options));
    auto [eh, ef] = check_gradient_norm_on_levels(f, w, grid, cfg.tol_levels, cfg.options);
    r.add(std::move(eh));
    r.add(std::move(ef));
    flag_inconsistency(r);
    r.finalize();
    return r;
}

} // namespace cpd
