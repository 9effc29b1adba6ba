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
#include <cpd/transnormal.hpp>
#include <cpd/error.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace cpd {

namespace {

double simpson_step(double a, double fa, double, double fm, double b, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const ScalarFn& fn, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = fn(lm), frm = fn(rm);
    const double left = simpson_step(a, fa, lm, flm, m, fm);
    const double right = simpson_step(m, fm, rm, frm, b, fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol)
        return left + right + diff / 15.0;
    return adaptive_rec(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_rec(fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double composite_simpson(const ScalarFn& fn, double a, double b, int panels)
{
    const int n = std::max(2, panels + (panels % 2));
    const double h = (b - a) / n;
    double sum = fn(a) + fn(b);
    for (int k = 1; k < n; ++k)
        sum += (k % 2 ? 4.0 : 2.0) * fn(a + k * h);
    return sum * h / 3.0;
}

double adaptive_simpson(const ScalarFn& fn, double a, double b, double tol)
{
    if (a == b)
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = fn(a), fm = fn(m), fb = fn(b);
    return adaptive_rec(fn, a, fa, b, fb, m, fm, simpson_step(a, fa, m, fm, b, fb), tol, 48);
}

MonotoneMap::MonotoneMap(ScalarFn b, double s0, Interval s_range, int n_nodes, double eps_b)
    : b_(std::move(b)), s0_(s0), s_range_(s_range), eps_b_(eps_b)
{
    if (n_nodes < 2 || !(s_range.hi > s_range.lo))
        throw Error(ErrorKind::Precondition, "h_from_b needs a nonempty range and at least two nodes");
    if (!s_range.contains(s0))
        throw Error(ErrorKind::Domain, "anchor s0 lies outside the tabulated range");
    s_.resize(static_cast<std::size_t>(n_nodes));
    for (int k = 0; k < n_nodes; ++k)
        s_[k] = k + 1 == n_nodes ? s_range.hi : s_range.lo + s_range.length() * k / (n_nodes - 1);
    for (double s : s_)
        b_(s); // checks positivity at every node

    const ScalarFn inv_b = [this](double s) { return 1.0 / b_(s); };
    u_.assign(s_.size(), 0.0);
    auto it = std::upper_bound(s_.begin(), s_.end(), s0);
    std::size_t k0 = std::min<std::size_t>(static_cast<std::size_t>(it - s_.begin()), s_.size() - 1);
    if (k0 > 0)
        --k0;
    u_[k0] = -adaptive_simpson(inv_b, s_[k0], s0, 1e-13);
    for (std::size_t k = k0 + 1; k < s_.size(); ++k)
        u_[k] = u_[k - 1] + adaptive_simpson(inv_b, s_[k - 1], s_[k], 1e-13);
    for (std::size_t k = k0; k-- > 0;)
        u_[k] = u_[k + 1] - adaptive_simpson(inv_b, s_[k], s_[k + 1], 1e-13);
}

double MonotoneMap::b_prime(double s) const
{
    const double h = 1e-5 * std::max(1.0, std::abs(s));
    const double lo = std::max(s - h, s_range_.lo), hi = std::min(s + h, s_range_.hi);
    return (b_(hi) - b_(lo)) / (hi - lo);
}

double MonotoneMap::inverse(double s) const
{
    const double slack = 1e-12 * std::max(1.0, s_range_.length());
    if (s < s_range_.lo - slack || s > s_range_.hi + slack)
        throw Error(ErrorKind::Domain, "h^-1 queried at " + std::to_string(s) + " outside the tabulated range");
    s = std::clamp(s, s_range_.lo, s_range_.hi);
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - s_.begin() - 1));
    k = std::min(k, s_.size() - 2);
    const ScalarFn inv_b = [this](double t) { return 1.0 / b_(t); };
    return u_[k] + adaptive_simpson(inv_b, s_[k], s, 1e-13);
}

double MonotoneMap::bracket(double u, std::size_t& k) const
{
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - u_.begin() - 1));
    k = std::min(k, u_.size() - 2);
    // Cubic Hermite model of h^{-1} on the bracket, slopes 1/b at the nodes.
    const double a = s_[k], c = s_[k + 1], w = c - a;
    const double u0 = u_[k], u1 = u_[k + 1];
    const double m0 = w / b_(a), m1 = w / b_(c);
    auto model = [&](double s) {
        const double t = (s - a) / w, t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * m1;
    };
    double lo = a, hi = c;
    while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        (model(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double MonotoneMap::forward(double u) const
{
    const double slack = 1e-12 * std::max(1.0, u_.back() - u_.front());
    if (u < u_.front() - slack || u > u_.back() + slack)
        throw Error(ErrorKind::Domain, "h queried at " + std::to_string(u) + " outside the tabulated range");
    std::size_t k = 0;
    double s = bracket(std::clamp(u, u_.front(), u_.back()), k);
    for (int it = 0; it < 2; ++it)
        s = std::clamp(s - (inverse(s) - u) * b_(s), s_range_.lo, s_range_.hi);
    return s;
}

double MonotoneMap::forward_prime(double u) const { return b_(forward(u)); }

double MonotoneMap::forward_second(double u) const
{
    const double s = forward(u);
    return b_prime(s) * b_(s);
}

MonotoneMap h_from_b(ScalarFn b, double s0, Interval s_range, int n_nodes)
{
    const double eps_b = 1e-10;
    ScalarFn checked = [b = std::move(b), eps_b](double s) {
        const double v = b(s);
        if (!(v >= eps_b))
            throw Error(ErrorKind::SingularIntegrand, "b(" + std::to_string(s) + ") = " + std::to_string(v) +
                                                          " is below the positivity threshold");
        return v;
    };
    return MonotoneMap(std::move(checked), s0, s_range, n_nodes, eps_b);
}

MonotoneMap h_from_b_covering(ScalarFn b, double s0, Interval u_range, int n_nodes)
{
    const double eps_b = 1e-10;
    auto usable = [&](double s) {
        const double v = b(s);
        return std::isfinite(v) && v >= eps_b;
    };
    if (!usable(s0))
        throw Error(ErrorKind::SingularIntegrand, "b is not positive at the anchor s0");
    const ScalarFn inv_b = [&](double s) { return 1.0 / b(s); };
    auto march = [&](double target, double dir) {
        double s = s0, u = 0.0;
        double step = 1e-2 * std::max(1.0, std::abs(s0));
        bool crossed = false;
        for (int it = 0; it < 100000; ++it) {
            if (crossed)
                return s;
            const double next = s + dir * step;
            if (!usable(next) || !usable(0.5 * (s + next))) {
                step *= 0.5;
                if (step < 1e-14 * std::max(1.0, std::abs(s)))
                    throw Error(ErrorKind::SingularIntegrand,
                                "b vanishes before h^-1 reaches " + std::to_string(target));
                continue;
            }
            u += dir * adaptive_simpson(inv_b, std::min(s, next), std::max(s, next), 1e-13);
            s = next;
            crossed = dir > 0 ? u >= target : u <= target;
            step *= 1.5;
        }
        throw Error(ErrorKind::Domain, "h^-1 does not reach " + std::to_string(target));
    };
    const double hi = u_range.hi > 0.0 ? march(u_range.hi, 1.0) : s0 + 1e-3 * std::max(1.0, std::abs(s0));
    const double lo = u_range.lo < 0.0 ? march(u_range.lo, -1.0) : s0 - 1e-3 * std::max(1.0, std::abs(s0));
    Interval range{lo, hi};
    if (!usable(range.lo))
        range.lo = s0;
    return h_from_b(std::move(b), s0, range, n_nodes);
}

std::shared_ptr<const MonotoneMap> transnormal_map(const TransnormalSpec& spec)
{
    if (!spec.b)
        throw Error(ErrorKind::Precondition, "transnormal spec needs a bound b");
    if (spec.s_range)
        return std::make_shared<MonotoneMap>(h_from_b(spec.b, spec.s0, *spec.s_range, spec.n_nodes));
    if (!spec.base)
        throw Error(ErrorKind::Precondition, "transnormal spec needs a base curve");
    const double eps = spec.base->tube_radius();
    const Interval u = spec.side == TransnormalSide::Signed ? Interval{-eps, eps} : Interval{0.0, eps};
    return std::make_shared<MonotoneMap>(h_from_b_covering(spec.b, spec.s0, u, spec.n_nodes));
}

namespace {

// Sign applied to d for the chosen side; throws on the excluded side.
double side_sign(TransnormalSide side, double d)
{
    switch (side) {
    case TransnormalSide::Signed:
        return 1.0;
    case TransnormalSide::Positive:
        if (d < 0.0)
            throw Error(ErrorKind::Domain, "point lies on the negative side of L");
        return 1.0;
    case TransnormalSide::Negative:
        if (d > 0.0)
            throw Error(ErrorKind::Domain, "point lies on the positive side of L");
        return -1.0;
    case TransnormalSide::Unsigned:
        return d >= 0.0 ? 1.0 : -1.0;
    }
    return 1.0;
}

Vec2 as_vec2(const Vec& x)
{
    if (x.size() != 2)
        throw Error(ErrorKind::Domain, "transnormal functions live on a planar base");
    return {x[0], x[1]};
}

} // namespace

GraphFunction transnormal_from_distance(const TransnormalSpec& spec)
{
    if (!spec.base)
        throw Error(ErrorKind::Precondition, "transnormal spec needs a base curve");
    if (spec.domain.size() != 2)
        throw Error(ErrorKind::Precondition, "transnormal spec needs a planar rectangle");
    auto map = transnormal_map(spec);
    auto base = spec.base;
    const TransnormalSide side = spec.side;

    GraphFunction F(
        [map, base, side](const Vec& x) {
            const DistanceResult r = base->query(as_vec2(x));
            return map->forward(side_sign(side, r.d) * r.d);
        },
        spec.domain);
    F.with_gradient([map, base, side](const Vec& x) {
        const DistanceResult r = base->query(as_vec2(x));
        const double s = side_sign(side, r.d);
        return Vec(map->forward_prime(s * r.d) * s * r.normal);
    });
    F.with_hessian([map, base, side](const Vec& x) {
        const DistanceResult r = base->query(as_vec2(x));
        const double s = side_sign(side, r.d);
        const double u = s * r.d;
        const double h = map->forward(u);
        const double h1 = map->b(h), h2 = map->b_prime(h) * h1;
        return Mat(h2 * r.normal * r.normal.transpose() + h1 * s * r.hessian);
    });
    F.with_name(spec.name);
    return F;
}

GraphFunction reconstruct_distance(const GraphFunction& F, std::shared_ptr<const MonotoneMap> map)
{
    GraphFunction d([F, map](const Vec& x) { return map->inverse(F.value(x)); }, F.domain(), F.fd_step());
    d.with_gradient([F, map](const Vec& x) { return Vec(F.gradient(x) / map->b(F.value(x))); });
    d.with_name(F.name() + "-distance");
    return d;
}

EikonalStats eikonal_residual(const GraphFunction& F, const ScalarFn& b, const Grid& grid, double tol)
{
    EikonalStats st;
    st.residuals.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec x = grid.node(k);
        double r = 0.0;
        try {
            r = std::abs(F.gradient(x).norm() - b(F.value(x)));
        } catch (const Error&) {
            ++st.excluded;
            continue;
        }
        st.residuals[k] = r;
        sum += r;
        ++st.evaluated;
        if (st.evaluated == 1 || r > st.max) {
            st.max = r;
            st.worst = x;
        }
    }
    st.mean = st.evaluated ? sum / static_cast<double>(st.evaluated) : 0.0;
    st.pass = st.evaluated > 0 && st.max <= tol;
    return st;
}

std::vector<Polyline> marching_squares(const std::function<double(const Vec2&)>& fn, double c, const Grid& grid)
{
    if (grid.dim() != 2)
        throw Error(ErrorKind::Precondition, "marching squares needs a 2D grid");
    const int nx = grid.counts[0], ny = grid.counts[1];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> val(static_cast<std::size_t>(nx) * ny, nan);
    auto at = [&](int i, int j) -> double& { return val[static_cast<std::size_t>(i) * ny + j]; };
    auto pos = [&](int i, int j) { return Vec2(grid.coord(0, i), grid.coord(1, j)); };
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            try {
                at(i, j) = fn(pos(i, j));
            } catch (const Error&) {
            }
        }

    // Edge keys: horizontal edges (i,j)-(i+1,j) and vertical edges (i,j)-(i,j+1).
    using Key = long long;
    auto hkey = [&](int i, int j) { return 2 * (static_cast<Key>(i) * ny + j); };
    auto vkey = [&](int i, int j) { return 2 * (static_cast<Key>(i) * ny + j) + 1; };
    std::map<Key, Vec2> edge_point;
    auto cross = [&](Key key, int i0, int j0, int i1, int j1) {
        if (!edge_point.count(key)) {
            const double a = at(i0, j0), b = at(i1, j1);
            const double t = (c - a) / (b - a);
            edge_point[key] = pos(i0, j0) + t * (pos(i1, j1) - pos(i0, j0));
        }
        return key;
    };

    std::vector<std::pair<Key, Key>> segs;
    for (int i = 0; i + 1 < nx; ++i) {
        for (int j = 0; j + 1 < ny; ++j) {
            const double v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
            if (!(std::isfinite(v00) && std::isfinite(v10) && std::isfinite(v11) && std::isfinite(v01)))
                continue;
            const bool a00 = v00 > c, a10 = v10 > c, a11 = v11 > c, a01 = v01 > c;
            // Crossed edges in cyclic order: bottom, right, top, left.
            std::vector<Key> e;
            if (a00 != a10)
                e.push_back(cross(hkey(i, j), i, j, i + 1, j));
            if (a10 != a11)
                e.push_back(cross(vkey(i + 1, j), i + 1, j, i + 1, j + 1));
            if (a01 != a11)
                e.push_back(cross(hkey(i, j + 1), i, j + 1, i + 1, j + 1));
            if (a00 != a01)
                e.push_back(cross(vkey(i, j), i, j, i, j + 1));
            if (e.size() == 2) {
                segs.emplace_back(e[0], e[1]);
            } else if (e.size() == 4) {
                const bool centre = 0.25 * (v00 + v10 + v11 + v01) > c;
                // e = {bottom, right, top, left}
                if (centre == a00) {
                    // centre joins the 00/11 diagonal: cut off corners 10 and 01
                    segs.emplace_back(e[0], e[1]);
                    segs.emplace_back(e[2], e[3]);
                } else {
                    segs.emplace_back(e[3], e[0]);
                    segs.emplace_back(e[1], e[2]);
                }
            }
        }
    }

    std::map<Key, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        incident[segs[s].first].push_back(s);
        incident[segs[s].second].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    auto other = [&](std::size_t s, Key k) { return segs[s].first == k ? segs[s].second : segs[s].first; };
    auto next_seg = [&](Key k) -> std::ptrdiff_t {
        for (std::size_t s : incident[k])
            if (!used[s])
                return static_cast<std::ptrdiff_t>(s);
        return -1;
    };

    std::vector<Polyline> out;
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0])
            continue;
        used[s0] = true;
        std::deque<Key> chain{segs[s0].first, segs[s0].second};
        for (std::ptrdiff_t s; (s = next_seg(chain.back())) >= 0;) {
            used[static_cast<std::size_t>(s)] = true;
            chain.push_back(other(static_cast<std::size_t>(s), chain.back()));
        }
        for (std::ptrdiff_t s; (s = next_seg(chain.front())) >= 0;) {
            used[static_cast<std::size_t>(s)] = true;
            chain.push_front(other(static_cast<std::size_t>(s), chain.front()));
        }
        Polyline p;
        if (chain.size() > 2 && chain.front() == chain.back()) {
            chain.pop_back();
            p.closed = true;
        }
        for (Key k : chain)
            p.points.push_back(edge_point[k]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Polyline> level_set_extract(const GraphFunction& F, double c, const Grid& grid)
{
    auto lines = marching_squares([&](const Vec2& x) { return F.value(Vec(x)); }, c, grid);
    for (auto& line : lines) {
        for (auto& p : line.points) {
            try {
                for (int it = 0; it < 3; ++it) {
                    const Vec x(p);
                    const double r = F.value(x) - c;
                    if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(c)))
                        break;
                    const Vec g = F.gradient(x);
                    const double g2 = g.squaredNorm();
                    if (g2 <= 0.0)
                        break;
                    p -= Vec2(r * g / g2);
                }
            } catch (const Error&) {
            }
        }
    }
    return lines;
}

LevelGradientStats level_gradient_stats(const GraphFunction& F, double c, const Grid& grid)
{
    std::vector<double> norms;
    for (const auto& line : level_set_extract(F, c, grid))
        for (const auto& p : line.points) {
            try {
                norms.push_back(F.gradient(Vec(p)).norm());
            } catch (const Error&) {
            }
        }
    LevelGradientStats st;
    st.points = norms.size();
    if (norms.empty())
        return st;
    for (double v : norms)
        st.mean += v;
    st.mean /= static_cast<double>(norms.size());
    for (double v : norms) {
        st.variance += (v - st.mean) * (v - st.mean);
        st.max_deviation = std::max(st.max_deviation, std::abs(v - st.mean));
    }
    st.variance /= static_cast<double>(norms.size());
    return st;
}

} // namespace cpd
