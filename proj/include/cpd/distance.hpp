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

#include <cpd/curve.hpp>

#include <memory>
#include <string>
#include <vector>

namespace cpd {

/// Piecewise-linear curve in the plane. `orientation` selects the positive
/// side: +1 puts it on the right of the direction of travel (outside of a
/// counter-clockwise loop).
struct Polyline {
    std::vector<Vec2> points;
    bool closed = false;
    double orientation = 1.0;

    std::size_t segment_count() const;
    double length() const;
    static Polyline sample(const PlaneCurve& curve, int segments, bool closed);
};

struct DistanceResult {
    double d = 0.0;      // signed distance
    Vec2 nearest;        // foot point on the curve
    Vec2 normal;         // unit normal of the positive side at the foot (= grad d off the curve)
    std::size_t segment = 0;
    double param = 0.0;  // position on the segment, or curve parameter for smooth bases
    Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero(); // Hessian of d at the query point
};

/// Signed distance to the base curve L inside its tubular neighbourhood.
class DistanceField {
public:
    virtual ~DistanceField() = default;
    /// Throws OutsideTube for |d| > tube radius and CutLocus where two
    /// separate parts of L compete for the nearest point.
    virtual DistanceResult query(const Vec2& x) const = 0;
    virtual double tube_radius() const = 0;
};

/// Exact distance to a polyline. Segments are grouped in runs of 16 with
/// bounding boxes; boxes are visited by increasing lower bound and each run is
/// scanned with the vector kernel.
class PolylineDistance final : public DistanceField {
public:
    PolylineDistance(Polyline line, double tube_radius, double eps_cut_rel = 1e-6);

    DistanceResult query(const Vec2& x) const override;
    double tube_radius() const override { return tube_; }
    const Polyline& polyline() const { return line_; }

    /// Nearest point ignoring the tube and cut-locus checks.
    DistanceResult nearest(const Vec2& x) const;

private:
    struct Scan;
    Scan scan(const Vec2& x, double slack) const;
    DistanceResult finish(const Vec2& x, std::size_t seg, double t, double d2) const;
    bool adjacent(std::size_t a, std::size_t b) const;

    Polyline line_;
    double tube_;
    double eps_cut_;
    std::vector<double> ax_, ay_, dx_, dy_, inv_len2_;
    std::vector<Vec2> seg_normal_;
    std::vector<Vec2> box_lo_, box_hi_;
};

/// Distance to a smooth planar curve: polyline seed (with the same tube and
/// cut-locus checks), then Newton on the curve parameter.
class CurveDistance final : public DistanceField {
public:
    CurveDistance(PlaneCurve curve, bool closed, double tube_radius, int seed_segments = 2048,
                  double orientation = 1.0);

    DistanceResult query(const Vec2& x) const override;
    double tube_radius() const override { return tube_; }

private:
    PlaneCurve curve_;
    bool closed_;
    double tube_;
    double orientation_;
    std::vector<double> seed_params_;
    std::unique_ptr<PolylineDistance> seed_;
};

/// Reads `x,y` CSV (header required). Blank lines separate polylines; a
/// polyline whose last point repeats the first is marked closed.
std::vector<Polyline> read_polylines_csv(const std::string& path);
void write_polylines_csv(const std::string& path, const std::vector<Polyline>& lines);
std::string polylines_to_csv(const std::vector<Polyline>& lines);

} // namespace cpd
