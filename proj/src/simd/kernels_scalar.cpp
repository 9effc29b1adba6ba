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
#include <cpd/simd/kernels.hpp>

#include <algorithm>
#include <cmath>

namespace cpd::simd::detail {

void segment_distances_scalar(double px, double py, const SegmentSpan& segs, double* dist2, double* param)
{
    const std::size_t n = segs.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double rx = px - segs.ax[k];
        const double ry = py - segs.ay[k];
        double t = (rx * segs.dx[k] + ry * segs.dy[k]) * segs.inv_len2[k];
        t = std::min(std::max(t, 0.0), 1.0);
        const double qx = t * segs.dx[k] - rx;
        const double qy = t * segs.dy[k] - ry;
        dist2[k] = qx * qx + qy * qy;
        param[k] = t;
    }
}

DiffStats combine_lanes(const double (&lane_max)[4], const std::size_t (&lane_arg)[4],
                        const double (&lane_sum)[4], const double* a, const double* b,
                        std::size_t tail_begin, std::size_t n)
{
    DiffStats out;
    out.count = n;
    out.sum = (lane_sum[0] + lane_sum[1]) + (lane_sum[2] + lane_sum[3]);
    out.max = -1.0;
    for (int l = 0; l < 4; ++l) {
        if (lane_max[l] > out.max || (lane_max[l] == out.max && lane_arg[l] < out.argmax)) {
            out.max = lane_max[l];
            out.argmax = lane_arg[l];
        }
    }
    for (std::size_t i = tail_begin; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        out.sum += d;
        if (d > out.max) {
            out.max = d;
            out.argmax = i;
        }
    }
    if (out.max < 0.0)
        out.max = 0.0;
    return out;
}

DiffStats abs_diff_stats_scalar(const double* a, const double* b, std::size_t n)
{
    double lane_max[4] = {-1.0, -1.0, -1.0, -1.0};
    std::size_t lane_arg[4] = {0, 0, 0, 0};
    double lane_sum[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t blocks = n / 4 * 4;
    for (std::size_t i = 0; i < blocks; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double d = std::abs(a[i + l] - b[i + l]);
            lane_sum[l] += d;
            if (d > lane_max[l]) {
                lane_max[l] = d;
                lane_arg[l] = i + l;
            }
        }
    }
    return combine_lanes(lane_max, lane_arg, lane_sum, a, b, blocks, n);
}

} // namespace cpd::simd::detail
