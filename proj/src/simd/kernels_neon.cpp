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

#if defined(__aarch64__)
#include <arm_neon.h>

namespace cpd::simd::detail {

void segment_distances_neon(double px, double py, const SegmentSpan& segs, double* dist2, double* param)
{
    const std::size_t n = segs.size();
    const std::size_t blocks = n / 2 * 2;
    const float64x2_t vpx = vdupq_n_f64(px), vpy = vdupq_n_f64(py);
    const float64x2_t zero = vdupq_n_f64(0.0), one = vdupq_n_f64(1.0);
    for (std::size_t k = 0; k < blocks; k += 2) {
        const float64x2_t rx = vsubq_f64(vpx, vld1q_f64(&segs.ax[k]));
        const float64x2_t ry = vsubq_f64(vpy, vld1q_f64(&segs.ay[k]));
        const float64x2_t dx = vld1q_f64(&segs.dx[k]);
        const float64x2_t dy = vld1q_f64(&segs.dy[k]);
        float64x2_t t = vaddq_f64(vmulq_f64(rx, dx), vmulq_f64(ry, dy));
        t = vmulq_f64(t, vld1q_f64(&segs.inv_len2[k]));
        t = vminq_f64(vmaxq_f64(t, zero), one);
        const float64x2_t qx = vsubq_f64(vmulq_f64(t, dx), rx);
        const float64x2_t qy = vsubq_f64(vmulq_f64(t, dy), ry);
        vst1q_f64(dist2 + k, vaddq_f64(vmulq_f64(qx, qx), vmulq_f64(qy, qy)));
        vst1q_f64(param + k, t);
    }
    if (blocks < n) {
        SegmentSpan tail{segs.ax.subspan(blocks), segs.ay.subspan(blocks), segs.dx.subspan(blocks),
                         segs.dy.subspan(blocks), segs.inv_len2.subspan(blocks)};
        segment_distances_scalar(px, py, tail, dist2 + blocks, param + blocks);
    }
}

DiffStats abs_diff_stats_neon(const double* a, const double* b, std::size_t n)
{
    // Two 2-lane registers emulate the four interleaved lanes of the reference.
    const std::size_t blocks = n / 4 * 4;
    float64x2_t sum_lo = vdupq_n_f64(0.0), sum_hi = vdupq_n_f64(0.0);
    double lane_max[4] = {-1.0, -1.0, -1.0, -1.0};
    std::size_t lane_arg[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < blocks; i += 4) {
        const float64x2_t d_lo = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        const float64x2_t d_hi = vabsq_f64(vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
        sum_lo = vaddq_f64(sum_lo, d_lo);
        sum_hi = vaddq_f64(sum_hi, d_hi);
        const double d[4] = {vgetq_lane_f64(d_lo, 0), vgetq_lane_f64(d_lo, 1), vgetq_lane_f64(d_hi, 0),
                             vgetq_lane_f64(d_hi, 1)};
        for (int l = 0; l < 4; ++l) {
            if (d[l] > lane_max[l]) {
                lane_max[l] = d[l];
                lane_arg[l] = i + static_cast<std::size_t>(l);
            }
        }
    }
    const double lane_sum[4] = {vgetq_lane_f64(sum_lo, 0), vgetq_lane_f64(sum_lo, 1),
                                vgetq_lane_f64(sum_hi, 0), vgetq_lane_f64(sum_hi, 1)};
    return combine_lanes(lane_max, lane_arg, lane_sum, a, b, blocks, n);
}

} // namespace cpd::simd::detail
#endif
