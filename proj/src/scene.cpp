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
#include <cpd/scene.hpp>
#include <cpd/cmc.hpp>
#include <cpd/distance.hpp>
#include <cpd/verify.hpp>

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

namespace cpd {

namespace {

const std::set<std::string> kCheckNames = {"theorem",
                                           entry_names::principal_direction,
                                           entry_names::angle_constancy,
                                           entry_names::t_geodesic,
                                           entry_names::grad_h_levels,
                                           entry_names::grad_f_levels,
                                           entry_names::gradient_relation,
                                           "mean_curvature",
                                           "eikonal",
                                           "distance_eikonal",
                                           "bochner",
                                           "slice_curvature"};

[[noreturn]] void bad(const std::string& field, const std::string& msg, const YAML::Node& n = {})
{
    std::string where = field;
    if (n && n.Mark().line >= 0)
        where += " (line " + std::to_string(n.Mark().line + 1) + ")";
    throw Error(ErrorKind::Parse, where + ": " + msg);
}

void check_keys(const YAML::Node& n, const std::string& field, const std::set<std::string>& allowed)
{
    if (!n.IsMap())
        bad(field, "expected a mapping", n);
    for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key))
            bad(field + "." + key, "unknown key", kv.first);
    }
}

double get_double(const YAML::Node& n, const std::string& field)
{
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        bad(field, "expected a number", n);
    }
}

int get_int(const YAML::Node& n, const std::string& field)
{
    try {
        return n.as<int>();
    } catch (const YAML::Exception&) {
        bad(field, "expected an integer", n);
    }
}

std::string get_string(const YAML::Node& n, const std::string& field)
{
    if (!n.IsScalar())
        bad(field, "expected a scalar", n);
    return n.as<std::string>();
}

Interval get_interval(const YAML::Node& n, const std::string& field)
{
    if (!n.IsSequence() || n.size() != 2)
        bad(field, "expected [lo, hi]", n);
    Interval iv{get_double(n[0], field + "[0]"), get_double(n[1], field + "[1]")};
    if (!(iv.hi > iv.lo))
        bad(field, "interval must satisfy lo < hi", n);
    return iv;
}

std::vector<Interval> get_box(const YAML::Node& n, const std::string& field)
{
    if (!n.IsSequence() || n.size() == 0)
        bad(field, "expected a list of [lo, hi] intervals", n);
    std::vector<Interval> box;
    for (std::size_t i = 0; i < n.size(); ++i)
        box.push_back(get_interval(n[i], field + "[" + std::to_string(i) + "]"));
    return box;
}

Expr parse_expr(const std::string& text, const std::vector<std::string>& vars, const std::string& field,
                const YAML::Node& n = {})
{
    try {
        return Expr::parse(text, vars);
    } catch (const Error& e) {
        std::string msg = e.what();
        const std::string prefix = std::string(to_string(ErrorKind::Parse)) + ": ";
        if (msg.rfind(prefix, 0) == 0)
            msg = msg.substr(prefix.size());
        bad(field, msg, n);
    }
}

CurveSpec parse_curve(const YAML::Node& n, const std::string& field)
{
    check_keys(n, field, {"kind", "radius", "a", "b", "x", "y", "domain", "orientation"});
    CurveSpec c;
    if (!n["kind"])
        bad(field + ".kind", "missing", n);
    c.kind = get_string(n["kind"], field + ".kind");
    if (n["radius"])
        c.radius = get_double(n["radius"], field + ".radius");
    if (n["a"])
        c.a = get_double(n["a"], field + ".a");
    if (n["b"])
        c.b = get_double(n["b"], field + ".b");
    if (n["orientation"])
        c.orientation = get_double(n["orientation"], field + ".orientation") < 0 ? -1.0 : 1.0;
    if (n["domain"])
        c.domain = get_interval(n["domain"], field + ".domain");
    if (c.kind == "parametric") {
        if (!n["x"] || !n["y"] || !n["domain"])
            bad(field, "parametric curves need x, y and domain", n);
        c.x = get_string(n["x"], field + ".x");
        c.y = get_string(n["y"], field + ".y");
        parse_expr(c.x, {"s"}, field + ".x", n["x"]);
        parse_expr(c.y, {"s"}, field + ".y", n["y"]);
    } else if (c.kind == "line") {
        if (!n["domain"])
            c.domain = {-2.0, 2.0};
    } else if (c.kind != "circle" && c.kind != "ellipse") {
        bad(field + ".kind", "unknown curve kind '" + c.kind + "'", n["kind"]);
    }
    if ((c.kind == "circle" && !(c.radius > 0)) || (c.kind == "ellipse" && !(c.a > 0 && c.b > 0)))
        bad(field, "radii must be positive", n);
    return c;
}

PlaneCurve build_curve(const CurveSpec& c)
{
    PlaneCurve out;
    if (c.kind == "circle") {
        out = PlaneCurve::circle(c.radius);
    } else if (c.kind == "line") {
        out = PlaneCurve::line(Vec2::Zero(), Vec2::UnitX(), c.domain);
    } else {
        ParametricPlaneCurve p;
        if (c.kind == "ellipse") {
            const double a = c.a, b = c.b;
            p.eval = [a, b](double s) { return Vec2(a * std::cos(s), b * std::sin(s)); };
            p.d1 = [a, b](double s) { return Vec2(-a * std::sin(s), b * std::cos(s)); };
            p.d2 = [a, b](double s) { return Vec2(-a * std::cos(s), -b * std::sin(s)); };
            p.domain = {0.0, 2.0 * std::numbers::pi};
        } else {
            const Expr x = Expr::parse(c.x, {"s"}), y = Expr::parse(c.y, {"s"});
            const Expr x1 = x.diff(0), y1 = y.diff(0), x2 = x1.diff(0), y2 = y1.diff(0);
            p.eval = [x, y](double s) { return Vec2(x(s), y(s)); };
            p.d1 = [x1, y1](double s) { return Vec2(x1(s), y1(s)); };
            p.d2 = [x2, y2](double s) { return Vec2(x2(s), y2(s)); };
            p.domain = c.domain;
        }
        out = arclength_reparam(p, 1024);
    }
    out.with_normal_sign(c.orientation);
    return out;
}

// Builtin warping names stand for the function applied to t.
std::string builtin_rho(const std::string& text)
{
    static const std::set<std::string> names = {"exp", "cosh", "sinh", "sin", "cos"};
    if (names.count(text))
        return text + "(t)";
    if (text == "identity")
        return "t";
    return text;
}

bool curve_closed(const CurveSpec& c) { return c.kind == "circle" || c.kind == "ellipse"; }

} // namespace

SceneConfig parse_scene(const std::string& yaml_text, const std::string& base_dir, const std::string& source)
{
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::Parse, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsMap())
        throw Error(ErrorKind::Parse, source + ": scene must be a mapping");
    check_keys(root, "scene", {"name", "ambient", "field", "construction", "checks", "output"});

    SceneConfig cfg;
    cfg.source = root["name"] ? get_string(root["name"], "name")
                              : std::filesystem::path(source).stem().string();
    cfg.base_dir = base_dir;

    if (const YAML::Node a = root["ambient"]) {
        check_keys(a, "ambient", {"kind", "dim", "rho", "interval"});
        if (a["kind"])
            cfg.ambient.kind = get_string(a["kind"], "ambient.kind");
        if (cfg.ambient.kind != "euclidean" && cfg.ambient.kind != "warped")
            bad("ambient.kind", "expected euclidean or warped", a["kind"]);
        if (a["dim"])
            cfg.ambient.dim = get_int(a["dim"], "ambient.dim");
        if (cfg.ambient.dim < 2 || cfg.ambient.dim > 4)
            bad("ambient.dim", "must be between 2 and 4", a["dim"]);
        if (a["rho"]) {
            cfg.ambient.rho = builtin_rho(get_string(a["rho"], "ambient.rho"));
            parse_expr(cfg.ambient.rho, {"t"}, "ambient.rho", a["rho"]);
        }
        if (a["interval"])
            cfg.ambient.interval = get_interval(a["interval"], "ambient.interval");
    }

    if (const YAML::Node f = root["field"]) {
        check_keys(f, "field", {"kind", "components"});
        FieldSpec fs;
        if (f["kind"])
            fs.kind = get_string(f["kind"], "field.kind");
        if (fs.kind != "constant" && fs.kind != "radial" && fs.kind != "warped")
            bad("field.kind", "expected constant, radial or warped", f["kind"]);
        if (f["components"]) {
            const YAML::Node c = f["components"];
            if (!c.IsSequence())
                bad("field.components", "expected a list of numbers", c);
            fs.components.clear();
            for (std::size_t i = 0; i < c.size(); ++i)
                fs.components.push_back(get_double(c[i], "field.components[" + std::to_string(i) + "]"));
        }
        cfg.field = fs;
    }

    const YAML::Node cons = root["construction"];
    if (!cons)
        bad("construction", "missing");
    check_keys(cons, "construction", {"profile", "transnormal", "graph"});
    if (cons.size() != 1)
        bad("construction", "exactly one of profile, transnormal, graph is required", cons);

    if (const YAML::Node p = cons["profile"]) {
        const std::string fp = "construction.profile";
        check_keys(p, fp, {"named", "gamma", "beta", "t_domain"});
        ProfileSpec ps;
        if (p["t_domain"])
            ps.t_domain = get_interval(p["t_domain"], fp + ".t_domain");
        if (p["named"]) {
            ps.named = get_string(p["named"], fp + ".named");
            if (ps.named != "catenoid" && ps.named != "cylinder" && ps.named != "plane")
                bad(fp + ".named", "expected catenoid, cylinder or plane", p["named"]);
        } else {
            if (!p["gamma"] || !p["beta"])
                bad(fp, "needs either named or both gamma and beta", p);
            ps.gamma = parse_curve(p["gamma"], fp + ".gamma");
            const YAML::Node b = p["beta"];
            check_keys(b, fp + ".beta", {"kind", "f", "g", "radius", "domain"});
            if (b["domain"])
                ps.t_domain = get_interval(b["domain"], fp + ".beta.domain");
            if (b["radius"])
                ps.beta_radius = get_double(b["radius"], fp + ".beta.radius");
            if (b["f"] || b["g"]) {
                if (!b["f"] || !b["g"])
                    bad(fp + ".beta", "expression profiles need both f and g", b);
                ps.beta_kind = "expression";
                ps.f = get_string(b["f"], fp + ".beta.f");
                ps.g = get_string(b["g"], fp + ".beta.g");
                parse_expr(ps.f, {"t"}, fp + ".beta.f", b["f"]);
                parse_expr(ps.g, {"t"}, fp + ".beta.g", b["g"]);
            } else {
                if (!b["kind"])
                    bad(fp + ".beta.kind", "missing", b);
                ps.beta_kind = get_string(b["kind"], fp + ".beta.kind");
                if (ps.beta_kind != "catenary" && ps.beta_kind != "line" && ps.beta_kind != "circle_arc")
                    bad(fp + ".beta.kind", "expected catenary, line or circle_arc", b["kind"]);
            }
        }
        cfg.profile = ps;
    } else if (const YAML::Node t = cons["transnormal"]) {
        const std::string ft = "construction.transnormal";
        check_keys(t, ft, {"base_polyline_path", "base_curve", "b", "s0", "tube", "side", "domain"});
        TransnormalSceneSpec ts;
        if (t["base_polyline_path"]) {
            ts.base_polyline_path = get_string(t["base_polyline_path"], ft + ".base_polyline_path");
            const std::filesystem::path full = std::filesystem::path(base_dir) / ts.base_polyline_path;
            if (!std::filesystem::exists(full))
                bad(ft + ".base_polyline_path", "file '" + full.string() + "' does not exist", t["base_polyline_path"]);
            ts.base_polyline_path = full.string();
        }
        if (t["base_curve"])
            ts.base_curve = parse_curve(t["base_curve"], ft + ".base_curve");
        if (ts.base_polyline_path.empty() && !ts.base_curve)
            bad(ft, "needs base_polyline_path or base_curve", t);
        if (!t["b"])
            bad(ft + ".b", "missing", t);
        ts.b = get_string(t["b"], ft + ".b");
        parse_expr(ts.b, {"s"}, ft + ".b", t["b"]);
        if (t["s0"])
            ts.s0 = get_double(t["s0"], ft + ".s0");
        if (t["tube"])
            ts.tube = get_double(t["tube"], ft + ".tube");
        if (!(ts.tube > 0))
            bad(ft + ".tube", "must be positive", t["tube"]);
        if (t["side"])
            ts.side = get_string(t["side"], ft + ".side");
        if (ts.side != "signed" && ts.side != "positive" && ts.side != "negative" && ts.side != "unsigned")
            bad(ft + ".side", "expected signed, positive, negative or unsigned", t["side"]);
        if (!t["domain"])
            bad(ft + ".domain", "missing", t);
        ts.domain = get_box(t["domain"], ft + ".domain");
        if (ts.domain.size() != 2)
            bad(ft + ".domain", "transnormal functions live on a planar base", t["domain"]);
        cfg.transnormal = ts;
    } else if (const YAML::Node g = cons["graph"]) {
        const std::string fg = "construction.graph";
        check_keys(g, fg, {"F", "domain"});
        GraphSpec gs;
        if (!g["F"] || !g["domain"])
            bad(fg, "needs F and domain", g);
        gs.F = get_string(g["F"], fg + ".F");
        gs.domain = get_box(g["domain"], fg + ".domain");
        if (gs.domain.size() != 2)
            bad(fg + ".domain", "graphs are taken over a planar base", g["domain"]);
        parse_expr(gs.F, {"x", "y"}, fg + ".F", g["F"]);
        cfg.graph = gs;
    }

    if (const YAML::Node c = root["checks"]) {
        if (!c.IsSequence())
            bad("checks", "expected a list", c);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::string fc = "checks[" + std::to_string(i) + "]";
            CheckRequest r;
            if (c[i].IsScalar()) {
                r.name = c[i].as<std::string>();
            } else {
                check_keys(c[i], fc, {"name", "tol", "target"});
                if (!c[i]["name"])
                    bad(fc + ".name", "missing", c[i]);
                r.name = get_string(c[i]["name"], fc + ".name");
                if (c[i]["tol"])
                    r.tol = get_double(c[i]["tol"], fc + ".tol");
                if (c[i]["target"])
                    r.target = get_double(c[i]["target"], fc + ".target");
            }
            if (!kCheckNames.count(r.name))
                bad(fc, "unknown check '" + r.name + "'", c[i]);
            cfg.checks.push_back(r);
        }
    } else {
        cfg.checks.push_back({"theorem", {}, {}});
    }

    if (const YAML::Node o = root["output"]) {
        check_keys(o, "output", {"mesh_path", "report_path", "grid", "allow_holes"});
        if (o["mesh_path"])
            cfg.output.mesh_path = get_string(o["mesh_path"], "output.mesh_path");
        if (o["report_path"])
            cfg.output.report_path = get_string(o["report_path"], "output.report_path");
        if (o["allow_holes"])
            cfg.output.allow_holes = o["allow_holes"].as<bool>();
        if (const YAML::Node gr = o["grid"]) {
            if (gr.IsScalar()) {
                cfg.output.grid_u = cfg.output.grid_v = get_int(gr, "output.grid");
            } else if (gr.IsSequence() && gr.size() == 2) {
                cfg.output.grid_u = get_int(gr[0], "output.grid[0]");
                cfg.output.grid_v = get_int(gr[1], "output.grid[1]");
            } else {
                bad("output.grid", "expected n or [n_u, n_v]", gr);
            }
            if (cfg.output.grid_u < 2 || cfg.output.grid_v < 2)
                bad("output.grid", "needs at least 2 nodes per axis", gr);
        }
    }
    return cfg;
}

SceneConfig load_scene(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::Parse, "cannot open scene file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    const std::filesystem::path p(path);
    const std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
    return parse_scene(ss.str(), dir, path);
}

BuiltScene build_scene(const SceneConfig& cfg)
{
    BuiltScene out;
    out.name = cfg.source;
    if (cfg.ambient.kind == "warped") {
        const Expr rho = Expr::parse(cfg.ambient.rho, {"t"});
        const Expr drho = rho.diff(0);
        out.ambient = WarpedProduct::warped(
            cfg.ambient.dim - 1, [rho](double t) { return rho(t); }, [drho](double t) { return drho(t); },
            cfg.ambient.interval.value_or(Interval{-std::numeric_limits<double>::infinity(),
                                                   std::numeric_limits<double>::infinity()}));
    } else {
        out.ambient = WarpedProduct::euclidean(cfg.ambient.dim);
    }

    if (cfg.profile) {
        if (!out.ambient.is_flat() || out.ambient.dim() != 3)
            throw Error(ErrorKind::Precondition, "profile constructions live in Euclidean R^3");
        const ProfileSpec& ps = *cfg.profile;
        FieldSpec fs = cfg.field.value_or(FieldSpec{});
        if (fs.kind != "constant" || fs.components.size() != 3)
            throw Error(ErrorKind::Precondition, "profile constructions need a constant field in R^3");
        const Vec x0 = Eigen::Map<const Vec>(fs.components.data(), 3);
        out.field = ConformalField::constant(x0);
        PlaneCurve gamma;
        ProfileCurve beta;
        if (ps.named == "catenoid") {
            gamma = PlaneCurve::circle(1.0);
            beta = catenary_profile_curve(ps.t_domain);
        } else if (ps.named == "cylinder") {
            gamma = PlaneCurve::circle(1.0);
            beta = ProfileCurve::vertical_line(ps.t_domain);
        } else if (ps.named == "plane") {
            gamma = PlaneCurve::line(Vec2::Zero(), Vec2::UnitX(), {-2.0, 2.0});
            beta = ProfileCurve::vertical_line(ps.t_domain);
        } else {
            gamma = build_curve(*ps.gamma);
            if (ps.beta_kind == "catenary") {
                beta = catenary_profile_curve(ps.t_domain);
            } else if (ps.beta_kind == "line") {
                beta = ProfileCurve::vertical_line(ps.t_domain);
            } else if (ps.beta_kind == "circle_arc") {
                beta = ProfileCurve::circle_arc(ps.beta_radius);
            } else {
                const Expr f = Expr::parse(ps.f, {"t"}), g = Expr::parse(ps.g, {"t"});
                const Expr f1 = f.diff(0), f2 = f1.diff(0), g1 = g.diff(0), g2 = g1.diff(0);
                beta = ProfileCurve([f](double t) { return f(t); }, [g](double t) { return g(t); }, ps.t_domain);
                beta.with_derivatives([f1](double t) { return f1(t); }, [f2](double t) { return f2(t); },
                                      [g1](double t) { return g1(t); }, [g2](double t) { return g2(t); });
            }
        }
        out.surface = cpd_surface_r3(gamma, beta, x0);
        out.surface.with_name(cfg.source);
        return out;
    }

    if (out.ambient.base_dim() != 2)
        throw Error(ErrorKind::Precondition, "graph constructions need a planar base (ambient dim 3)");
    if (cfg.field && cfg.field->kind != "warped")
        throw Error(ErrorKind::Precondition, "graph constructions use the warped field rho d_t");
    out.field = ConformalField::warped(out.ambient);
    out.to_obj = [](const Vec& p) { return Eigen::Vector3d(p[1], p[2], p[0]); };

    if (cfg.transnormal) {
        const TransnormalSceneSpec& ts = *cfg.transnormal;
        const Expr b = Expr::parse(ts.b, {"s"});
        out.b = [b](double s) { return b(s); };
        TransnormalSpec spec;
        spec.b = out.b;
        spec.s0 = ts.s0;
        spec.domain = ts.domain;
        spec.name = cfg.source;
        spec.side = ts.side == "positive"   ? TransnormalSide::Positive
                    : ts.side == "negative" ? TransnormalSide::Negative
                    : ts.side == "unsigned" ? TransnormalSide::Unsigned
                                            : TransnormalSide::Signed;
        if (ts.base_curve) {
            spec.base = std::make_shared<CurveDistance>(build_curve(*ts.base_curve), curve_closed(*ts.base_curve),
                                                        ts.tube, 2048, ts.base_curve->orientation);
        } else {
            auto lines = read_polylines_csv(ts.base_polyline_path);
            if (lines.empty())
                throw Error(ErrorKind::Parse, ts.base_polyline_path + ": no polyline");
            spec.base = std::make_shared<PolylineDistance>(lines.front(), ts.tube);
        }
        out.map = transnormal_map(spec);
        spec.s_range = out.map->s_range();
        out.graph = transnormal_from_distance(spec);
    } else {
        const GraphSpec& gs = *cfg.graph;
        out.graph = graph_function_from_expr(Expr::parse(gs.F, {"x", "y"}), gs.domain, cfg.source);
    }
    out.surface = graph_in_warped_product(*out.graph, out.ambient);
    out.surface.with_name(cfg.source);
    return out;
}

namespace {

std::pair<int, int> grid_of(const SceneConfig& cfg, const RunOverrides& ov)
{
    return ov.grid.value_or(std::pair<int, int>{cfg.output.grid_u, cfg.output.grid_v});
}

double tol_for(const CheckRequest& r, const RunOverrides& ov, double fallback)
{
    if (ov.tol)
        return *ov.tol;
    return r.tol.value_or(fallback);
}

Grid check_grid(const std::vector<Interval>& dom, std::pair<int, int> g)
{
    return Grid::inset(dom, {g.first, g.second}, 0.02);
}

} // namespace

ResidualReport run_checks(const SceneConfig& cfg, const BuiltScene& scene, const RunOverrides& ov)
{
    const auto g = grid_of(cfg, ov);
    const Grid grid = check_grid(scene.surface.domain(), g);
    ResidualReport rep;
    rep.surface = scene.name;
    rep.grid_u = g.first;
    rep.grid_v = g.second;
    rep.fd_step = scene.surface.fd_step();
    const Immersion& m = scene.surface;
    const CheckOptions opt;
    auto add_unique = [&](ReportEntry e) {
        if (!rep.find(e.name))
            rep.add(std::move(e));
    };
    auto levels = [&](double tol) {
        return scene.graph ? check_gradient_norm_on_levels(*scene.graph, scene.ambient, grid, tol, opt)
                           : check_gradient_norm_on_levels(m, scene.field, grid, tol, opt);
    };

    for (const CheckRequest& r : cfg.checks) {
        if (r.name == "theorem") {
            add_unique(check_principal_direction(m, scene.field, grid, tol_for(r, ov, 1e-5), opt));
            add_unique(check_angle_constancy(m, scene.field, grid, tol_for(r, ov, 1e-4), opt));
            add_unique(check_T_geodesic(m, scene.field, grid, tol_for(r, ov, 1e-4), opt));
            auto [eh, ef] = levels(tol_for(r, ov, 1e-4));
            add_unique(std::move(eh));
            add_unique(std::move(ef));
        } else if (r.name == entry_names::principal_direction) {
            add_unique(check_principal_direction(m, scene.field, grid, tol_for(r, ov, 1e-5), opt));
        } else if (r.name == entry_names::angle_constancy) {
            add_unique(check_angle_constancy(m, scene.field, grid, tol_for(r, ov, 1e-4), opt));
        } else if (r.name == entry_names::t_geodesic) {
            add_unique(check_T_geodesic(m, scene.field, grid, tol_for(r, ov, 1e-4), opt));
        } else if (r.name == entry_names::grad_h_levels || r.name == entry_names::grad_f_levels) {
            auto [eh, ef] = levels(tol_for(r, ov, 1e-4));
            add_unique(r.name == entry_names::grad_h_levels ? std::move(eh) : std::move(ef));
        } else if (r.name == entry_names::gradient_relation) {
            if (scene.graph)
                add_unique(check_gradient_relation(*scene.graph, scene.ambient, grid, tol_for(r, ov, 1e-8)));
            else
                add_unique(skipped_entry(r.name, tol_for(r, ov, 1e-8), "only defined for graphs"));
        } else if (r.name == "mean_curvature") {
            const double tol = tol_for(r, ov, 1e-6), target = r.target.value_or(0.0);
            std::vector<double> res;
            std::vector<Vec> params;
            std::size_t excluded = 0;
            const bool flat_graph = scene.graph && scene.ambient.is_flat();
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const Vec u = grid.node(k);
                try {
                    const double H = flat_graph ? graph_mean_curvature(*scene.graph, u)
                                                : shape_data(m, u, -1.0).mean_curvature;
                    res.push_back(std::abs(H - target));
                    params.push_back(u);
                } catch (const Error&) {
                    ++excluded;
                }
            }
            add_unique(make_entry("mean_curvature", res, params, tol, excluded));
        } else if (r.name == "eikonal" || r.name == "distance_eikonal") {
            const double tol = tol_for(r, ov, 1e-5);
            if (!scene.map) {
                add_unique(skipped_entry(r.name, tol, "only defined for transnormal scenes"));
                continue;
            }
            const GraphFunction f = r.name == "eikonal" ? *scene.graph : reconstruct_distance(*scene.graph, scene.map);
            const ScalarFn b = r.name == "eikonal" ? scene.b : ScalarFn([](double) { return 1.0; });
            const EikonalStats st = eikonal_residual(f, b, grid, tol);
            std::vector<double> res;
            std::vector<Vec> params;
            for (std::size_t k = 0; k < grid.size(); ++k)
                if (std::isfinite(st.residuals[k])) {
                    res.push_back(st.residuals[k]);
                    params.push_back(grid.node(k));
                }
            add_unique(make_entry(r.name, res, params, tol, st.excluded));
        } else if (r.name == "bochner") {
            const double tol = tol_for(r, ov, 1e-6);
            if (!scene.graph || !scene.ambient.is_flat())
                add_unique(skipped_entry(r.name, tol, "needs a graph over a flat base"));
            else
                add_unique(bochner_residual(*scene.graph, grid, tol));
        } else if (r.name == "slice_curvature") {
            const double tol = tol_for(r, ov, 1e-6);
            if (!cfg.profile) {
                add_unique(skipped_entry(r.name, tol, "only defined for profile scenes"));
                continue;
            }
            std::vector<double> ts;
            const Interval td = m.domain()[1];
            for (int i = 0; i < 9; ++i)
                ts.push_back(td.lo + td.length() * (i + 1) / 10.0);
            SliceCheckOptions so;
            so.tol_variation = tol;
            so.tol_split = ov.tol.value_or(1e-5);
            for (auto& e : slice_curvature_check(m, ts, so))
                add_unique(std::move(e));
        }
    }
    flag_inconsistency(rep);
    rep.finalize();
    return rep;
}

namespace {

int input_error(std::ostream& err, const std::exception& e)
{
    err << "error: " << e.what() << "\n";
    return 2;
}

std::string default_path(const std::string& scene_path, const std::string& suffix)
{
    return std::filesystem::path(scene_path).stem().string() + suffix;
}

int finish_report(const ResidualReport& rep, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << rep.to_text();
    else
        rep.write(path);
    for (const auto& note : rep.notes)
        out << "note: " << note << "\n";
    const bool ok = rep.all_pass();
    out << "result: " << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int run_generate(const std::string& scene_path, const RunOverrides& ov, std::ostream& out, std::ostream& err)
{
    SceneConfig cfg;
    BuiltScene scene;
    try {
        cfg = load_scene(scene_path);
        scene = build_scene(cfg);
        const auto g = grid_of(cfg, ov);
        const std::string mesh_path =
            ov.out.value_or(cfg.output.mesh_path.empty() ? default_path(scene_path, ".obj") : cfg.output.mesh_path);
        const MeshGrid mesh = sample_mesh(scene.surface, g.first, g.second, true, 1.0, scene.to_obj);
        export_obj(mesh, mesh_path, cfg.output.allow_holes);
        out << "mesh: " << mesh_path << " (" << mesh.nu * mesh.nv << " vertices, "
            << 2 * (mesh.nu - 1) * (mesh.nv - 1) << " triangles)\n";
        const ResidualReport rep = run_checks(cfg, scene, ov);
        const std::string report_path = ov.report.value_or(cfg.output.report_path);
        if (!report_path.empty())
            out << "report: " << report_path << "\n";
        return finish_report(rep, report_path, out);
    } catch (const std::exception& e) {
        return input_error(err, e);
    }
}

int run_verify(const std::string& scene_path, const RunOverrides& ov, std::ostream& out, std::ostream& err)
{
    try {
        const SceneConfig cfg = load_scene(scene_path);
        const BuiltScene scene = build_scene(cfg);
        const ResidualReport rep = run_checks(cfg, scene, ov);
        return finish_report(rep, ov.report.value_or(cfg.output.report_path), out);
    } catch (const std::exception& e) {
        return input_error(err, e);
    }
}

int run_transnormal(const std::string& scene_path, const RunOverrides& ov, int levels, std::ostream& out,
                    std::ostream& err)
{
    try {
        SceneConfig cfg = load_scene(scene_path);
        if (!cfg.transnormal)
            throw Error(ErrorKind::Precondition, "scene has no transnormal construction");
        if (levels < 1)
            throw Error(ErrorKind::Precondition, "--levels must be positive");
        const BuiltScene scene = build_scene(cfg);
        cfg.checks = {{"eikonal", {}, {}},
                      {"distance_eikonal", {}, {}},
                      {entry_names::grad_h_levels, {}, {}},
                      {entry_names::grad_f_levels, {}, {}}};
        const ResidualReport rep = run_checks(cfg, scene, ov);

        const auto g = grid_of(cfg, ov);
        const Grid grid = check_grid(scene.graph->domain(), g);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            try {
                const double v = scene.graph->value(grid.node(k));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            } catch (const Error&) {
            }
        }
        std::vector<Polyline> lines;
        if (hi > lo)
            for (int k = 0; k < levels; ++k)
                for (auto& l : level_set_extract(*scene.graph, lo + (hi - lo) * (k + 1) / (levels + 1), grid))
                    lines.push_back(std::move(l));
        const std::string csv = ov.out.value_or(default_path(scene_path, "_levels.csv"));
        write_polylines_csv(csv, lines);
        out << "levels: " << csv << " (" << lines.size() << " polylines)\n";
        return finish_report(rep, ov.report.value_or(cfg.output.report_path), out);
    } catch (const std::exception& e) {
        return input_error(err, e);
    }
}

int run_profile(const ProfileArgs& a, std::ostream& out, std::ostream& err)
{
    try {
        if (!(a.t_max > 0))
            throw Error(ErrorKind::Precondition, "--t-max must be positive");
        const ProfileSolution sol = cmc_profile_ode(a.H, a.kappa, a.f0, a.fp0, {-a.t_max, a.t_max}, a.step);
        if (!a.out.empty()) {
            sol.write_csv(a.out);
            out << "profile: " << a.out << " (" << sol.samples.size() << " samples)\n";
        }
        if (sol.focal)
            out << "warning: orbit stopped at the focal set (1 - f kappa = 0); partial orbit written\n";
        if (sol.turning)
            out << "warning: profile turned vertical (g' changed sign)\n";
        out << "classification: " << to_string(sol.classification) << "\n";
        return 0;
    } catch (const std::exception& e) {
        return input_error(err, e);
    }
}

} // namespace cpd
