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
#include <cpd/distance.hpp>
#include <cpd/error.hpp>
#include <cpd/simd/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace cpd {

namespace {

constexpr std::size_t kChunk = 16;

Vec2 right_normal(const Vec2& d) { return Vec2(d.y(), -d.x()); }

std::string fmt_point(const Vec2& x)
{
    std::ostringstream os;
    os << "(" << x.x() << ", " << x.y() << ")";
    return os.str();
}

} // namespace

std::size_t Polyline::segment_count() const
{
    if (points.size() < 2)
        return 0;
    return closed ? points.size() : points.size() - 1;
}

double Polyline::length() const
{
    double len = 0.0;
    const std::size_t n = segment_count();
    for (std::size_t k = 0; k < n; ++k)
        len += (points[(k + 1) % points.size()] - points[k]).norm();
    return len;
}

Polyline Polyline::sample(const PlaneCurve& curve, int segments, bool closed)
{
    Polyline p;
    p.closed = closed;
    const Interval& dom = curve.domain();
    const int count = closed ? segments : segments + 1;
    for (int k = 0; k < count; ++k)
        p.points.push_back(curve.point(dom.lo + dom.length() * k / segments));
    return p;
}

struct PolylineDistance::Scan {
    struct Hit {
        std::size_t seg;
        double d2;
        double t;
    };
    std::vector<Hit> hits; // sorted by segment
    std::size_t best = 0;  // index into hits
};

PolylineDistance::PolylineDistance(Polyline line, double tube_radius, double eps_cut_rel)
    : line_(std::move(line)), tube_(tube_radius), eps_cut_(eps_cut_rel * tube_radius)
{
    const std::size_t n = line_.segment_count();
    if (n == 0)
        throw Error(ErrorKind::Precondition, "polyline needs at least two points");
    ax_.resize(n);
    ay_.resize(n);
    dx_.resize(n);
    dy_.resize(n);
    inv_len2_.resize(n);
    seg_normal_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = line_.points[k];
        const Vec2 b = line_.points[(k + 1) % line_.points.size()];
        const Vec2 d = b - a;
        ax_[k] = a.x();
        ay_[k] = a.y();
        dx_[k] = d.x();
        dy_[k] = d.y();
        const double l2 = d.squaredNorm();
        inv_len2_[k] = l2 > 0 ? 1.0 / l2 : 0.0;
        seg_normal_[k] = l2 > 0 ? Vec2(line_.orientation * right_normal(d) / std::sqrt(l2)) : Vec2(0, 0);
    }
    for (std::size_t c = 0; c < n; c += kChunk) {
        Vec2 lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
        Vec2 hi = -lo;
        for (std::size_t k = c; k < std::min(n, c + kChunk); ++k) {
            const Vec2 a(ax_[k], ay_[k]), b(ax_[k] + dx_[k], ay_[k] + dy_[k]);
            lo = lo.cwiseMin(a).cwiseMin(b);
            hi = hi.cwiseMax(a).cwiseMax(b);
        }
        box_lo_.push_back(lo);
        box_hi_.push_back(hi);
    }
}

bool PolylineDistance::adjacent(std::size_t a, std::size_t b) const
{
    const std::size_t n = ax_.size();
    const std::size_t diff = a > b ? a - b : b - a;
    if (diff <= 1)
        return true;
    return line_.closed && diff == n - 1;
}

PolylineDistance::Scan PolylineDistance::scan(const Vec2& x, double slack) const
{
    const std::size_t chunks = box_lo_.size();
    std::vector<std::pair<double, std::size_t>> order(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const Vec2 gap = (box_lo_[c] - x).cwiseMax(x - box_hi_[c]).cwiseMax(Vec2::Zero());
        order[c] = {gap.squaredNorm(), c};
    }
    std::sort(order.begin(), order.end());

    Scan sc;
    double best_d2 = std::numeric_limits<double>::infinity();
    double dist2[kChunk], param[kChunk];
    const std::size_t n = ax_.size();
    for (const auto& [lb, c] : order) {
        const double reach = std::sqrt(best_d2) + slack;
        if (std::isfinite(best_d2) && lb > reach * reach)
            break;
        const std::size_t k0 = c * kChunk, len = std::min(kChunk, n - k0);
        simd::SegmentSpan segs{{&ax_[k0], len}, {&ay_[k0], len}, {&dx_[k0], len}, {&dy_[k0], len},
                               {&inv_len2_[k0], len}};
        simd::segment_distances(x.x(), x.y(), segs, {dist2, len}, {param, len});
        for (std::size_t i = 0; i < len; ++i) {
            sc.hits.push_back({k0 + i, dist2[i], param[i]});
            best_d2 = std::min(best_d2, dist2[i]);
        }
    }
    std::sort(sc.hits.begin(), sc.hits.end(), [](const auto& a, const auto& b) { return a.seg < b.seg; });
    for (std::size_t i = 0; i < sc.hits.size(); ++i)
        if (sc.hits[i].d2 < sc.hits[sc.best].d2)
            sc.best = i;
    return sc;
}

DistanceResult PolylineDistance::finish(const Vec2& x, std::size_t seg, double t, double d2) const
{
    const std::size_t n = ax_.size();
    DistanceResult r;
    r.segment = seg;
    r.param = t;
    r.nearest = Vec2(ax_[seg] + t * dx_[seg], ay_[seg] + t * dy_[seg]);
    Vec2 side = seg_normal_[seg];
    const bool at_start = t <= 0.0, at_end = t >= 1.0;
    if (at_start && (line_.closed || seg > 0)) {
        const std::size_t prev = (seg + n - 1) % n;
        side = (seg_normal_[prev] + seg_normal_[seg]).normalized();
    } else if (at_end && (line_.closed || seg + 1 < n)) {
        const std::size_t next = (seg + 1) % n;
        side = (seg_normal_[seg] + seg_normal_[next]).normalized();
    }
    const Vec2 off = x - r.nearest;
    const double dist = std::sqrt(d2);
    // Below this the offset direction is rounding noise.
    const double tiny = 1e-12 * (1.0 + x.norm());
    if (dist > tiny) {
        const double sgn = off.dot(side) >= 0.0 ? 1.0 : -1.0;
        r.d = sgn * dist;
        if (at_start || at_end) {
            const Vec2 u = off / dist;
            r.normal = sgn * u;
            r.hessian = sgn * (Eigen::Matrix2d::Identity() - u * u.transpose()) / dist;
        } else {
            // Interior foot: the gradient is the segment normal exactly.
            r.normal = seg_normal_[seg];
        }
    } else {
        r.d = off.dot(side) >= 0.0 ? dist : -dist;
        r.d = 0.0;
        r.normal = side;
    }
    return r;
}

DistanceResult PolylineDistance::nearest(const Vec2& x) const
{
    const Scan sc = scan(x, 0.0);
    const auto& h = sc.hits[sc.best];
    return finish(x, h.seg, h.t, h.d2);
}

DistanceResult PolylineDistance::query(const Vec2& x) const
{
    const Scan sc = scan(x, eps_cut_);
    const auto& best = sc.hits[sc.best];
    const double best_d = std::sqrt(best.d2);
    if (best_d > tube_)
        throw Error(ErrorKind::OutsideTube, "point " + fmt_point(x) + " is at distance " +
                                                std::to_string(best_d) + " > tube radius");

    // Local minima of the distance restricted to L: interior feet, and vertices
    // at which both incident segments clamp.
    const std::size_t n = ax_.size();
    auto find = [&](std::size_t seg) -> const Scan::Hit* {
        auto it = std::lower_bound(sc.hits.begin(), sc.hits.end(), seg,
                                   [](const Scan::Hit& h, std::size_t s) { return h.seg < s; });
        return it != sc.hits.end() && it->seg == seg ? &*it : nullptr;
    };
    struct Minimum {
        std::size_t a, b;
        double d;
    };
    std::vector<Minimum> minima;
    const double limit = best_d + eps_cut_;
    for (const auto& h : sc.hits) {
        const double d = std::sqrt(h.d2);
        if (d > limit)
            continue;
        if (h.t > 0.0 && h.t < 1.0) {
            minima.push_back({h.seg, h.seg, d});
        } else if (h.t >= 1.0) {
            const bool has_next = line_.closed || h.seg + 1 < n;
            if (!has_next) {
                minima.push_back({h.seg, h.seg, d});
                continue;
            }
            const std::size_t next = (h.seg + 1) % n;
            const Scan::Hit* hn = find(next);
            if (!hn || hn->t <= 0.0)
                minima.push_back({h.seg, next, d});
        } else if (!line_.closed && h.seg == 0) {
            minima.push_back({0, 0, d});
        }
    }
    for (std::size_t i = 0; i < minima.size(); ++i) {
        for (std::size_t j = i + 1; j < minima.size(); ++j) {
            const bool near = adjacent(minima[i].a, minima[j].a) || adjacent(minima[i].a, minima[j].b) ||
                              adjacent(minima[i].b, minima[j].a) || adjacent(minima[i].b, minima[j].b);
            if (!near && std::abs(minima[i].d - minima[j].d) < eps_cut_)
                throw Error(ErrorKind::CutLocus, "point " + fmt_point(x) +
                                                     " has two competing nearest points on L");
        }
    }
    return finish(x, best.seg, best.t, best.d2);
}

CurveDistance::CurveDistance(PlaneCurve curve, bool closed, double tube_radius, int seed_segments,
                             double orientation)
    : curve_(std::move(curve)), closed_(closed), tube_(tube_radius), orientation_(orientation)
{
    Polyline p = Polyline::sample(curve_, seed_segments, closed);
    p.orientation = orientation;
    const Interval& dom = curve_.domain();
    const int count = closed ? seed_segments + 1 : seed_segments + 1;
    for (int k = 0; k < count; ++k)
        seed_params_.push_back(dom.lo + dom.length() * k / seed_segments);
    // The chordal polyline sits slightly inside a convex curve; widen the seed tube accordingly.
    seed_ = std::make_unique<PolylineDistance>(std::move(p), tube_radius * 1.01 + 1e-9, 1e-6);
}

DistanceResult CurveDistance::query(const Vec2& x) const
{
    const DistanceResult seed = seed_->query(x);
    const Interval& dom = curve_.domain();
    double s = seed_params_[seed.segment] +
               seed.param * (seed_params_[seed.segment + 1] - seed_params_[seed.segment]);
    const double period = dom.length();
    const double max_step = period / static_cast<double>(seed_params_.size() - 1);
    for (int it = 0; it < 50; ++it) {
        const Vec2 r = curve_.point(s) - x;
        const Vec2 v = curve_.d1(s);
        const Vec2 a = curve_.d2(s);
        const double g1 = v.dot(r);
        const double g2 = v.squaredNorm() + a.dot(r);
        if (!(g2 > 0.0))
            break;
        const double step = std::clamp(g1 / g2, -max_step, max_step);
        s -= step;
        if (closed_) {
            if (s < dom.lo)
                s += period;
            if (s > dom.hi)
                s -= period;
        } else {
            s = std::clamp(s, dom.lo, dom.hi);
        }
        if (std::abs(step) <= 1e-15 * std::max(1.0, period))
            break;
    }
    DistanceResult out;
    out.param = s;
    out.segment = seed.segment;
    out.nearest = curve_.point(s);
    const Vec2 v = curve_.d1(s);
    out.normal = orientation_ * right_normal(v).normalized();
    const Vec2 off = x - out.nearest;
    const double dist = off.norm();
    out.d = off.dot(out.normal) >= 0.0 ? dist : -dist;
    // Signed curvature with respect to the positive normal.
    const Vec2 a = curve_.d2(s);
    const double speed = v.norm();
    const double k = orientation_ * (v.x() * a.y() - v.y() * a.x()) / (speed * speed * speed);
    const Vec2 tangent = v / speed;
    out.hessian = k / (1.0 + k * out.d) * tangent * tangent.transpose();
    if (std::abs(out.d) > tube_)
        throw Error(ErrorKind::OutsideTube, "point " + fmt_point(x) + " is outside the tube");
    return out;
}

std::vector<Polyline> read_polylines_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw Error(ErrorKind::Parse, "cannot open polyline file " + path);
    std::string line;
    int lineno = 0;
    bool header = false;
    std::vector<Polyline> out(1);
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!header) {
            if (line != "x,y")
                throw Error(ErrorKind::Parse, path + ":1: expected header 'x,y'");
            header = true;
            continue;
        }
        if (line.empty()) {
            if (!out.back().points.empty())
                out.emplace_back();
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected 'x,y'");
        try {
            std::size_t used = 0;
            const double px = std::stod(line.substr(0, comma), &used);
            const double py = std::stod(line.substr(comma + 1));
            out.back().points.emplace_back(px, py);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    if (!header)
        throw Error(ErrorKind::Parse, path + ": empty file");
    if (out.back().points.empty())
        out.pop_back();
    for (auto& p : out) {
        if (p.points.size() > 2 && p.points.front() == p.points.back()) {
            p.points.pop_back();
            p.closed = true;
        }
    }
    return out;
}

std::string polylines_to_csv(const std::vector<Polyline>& lines)
{
    std::string out = "x,y\n";
    char buf[96];
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0)
            out += "\n";
        const auto& p = lines[i];
        for (const auto& q : p.points) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", q.x(), q.y());
            out += buf;
        }
        if (p.closed && !p.points.empty()) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.points.front().x(), p.points.front().y());
            out += buf;
        }
    }
    return out;
}

void write_polylines_csv(const std::string& path, const std::vector<Polyline>& lines)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(ErrorKind::Export, "cannot open " + path);
    os << polylines_to_csv(lines);
}

} // namespace cpd
