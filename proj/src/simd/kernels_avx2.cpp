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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace cpd::simd::detail {

void segment_distances_avx2(double px, double py, const SegmentSpan& segs, double* dist2, double* param)
{
    const std::size_t n = segs.size();
    const std::size_t blocks = n / 4 * 4;
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
    const __m256d zero = _mm256_setzero_pd(), one = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < blocks; k += 4) {
        const __m256d rx = _mm256_sub_pd(vpx, _mm256_loadu_pd(&segs.ax[k]));
        const __m256d ry = _mm256_sub_pd(vpy, _mm256_loadu_pd(&segs.ay[k]));
        const __m256d dx = _mm256_loadu_pd(&segs.dx[k]);
        const __m256d dy = _mm256_loadu_pd(&segs.dy[k]);
        __m256d t = _mm256_add_pd(_mm256_mul_pd(rx, dx), _mm256_mul_pd(ry, dy));
        t = _mm256_mul_pd(t, _mm256_loadu_pd(&segs.inv_len2[k]));
        t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
        const __m256d qx = _mm256_sub_pd(_mm256_mul_pd(t, dx), rx);
        const __m256d qy = _mm256_sub_pd(_mm256_mul_pd(t, dy), ry);
        _mm256_storeu_pd(dist2 + k, _mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy)));
        _mm256_storeu_pd(param + k, t);
    }
    if (blocks < n) {
        SegmentSpan tail{segs.ax.subspan(blocks), segs.ay.subspan(blocks), segs.dx.subspan(blocks),
                         segs.dy.subspan(blocks), segs.inv_len2.subspan(blocks)};
        segment_distances_scalar(px, py, tail, dist2 + blocks, param + blocks);
    }
}

DiffStats abs_diff_stats_avx2(const double* a, const double* b, std::size_t n)
{
    const std::size_t blocks = n / 4 * 4;
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_set1_pd(-1.0);
    __m256d vsum = _mm256_setzero_pd();
    __m256d varg = _mm256_setzero_pd(); // indices as doubles, exact below 2^53
    __m256d vidx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d four = _mm256_set1_pd(4.0);
    for (std::size_t i = 0; i < blocks; i += 4) {
        const __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        vsum = _mm256_add_pd(vsum, d);
        const __m256d gt = _mm256_cmp_pd(d, vmax, _CMP_GT_OQ);
        vmax = _mm256_blendv_pd(vmax, d, gt);
        varg = _mm256_blendv_pd(varg, vidx, gt);
        vidx = _mm256_add_pd(vidx, four);
    }
    alignas(32) double lane_max[4], lane_sum[4], lane_argd[4];
    _mm256_store_pd(lane_max, vmax);
    _mm256_store_pd(lane_sum, vsum);
    _mm256_store_pd(lane_argd, varg);
    std::size_t lane_arg[4];
    for (int l = 0; l < 4; ++l)
        lane_arg[l] = static_cast<std::size_t>(lane_argd[l]);
    return combine_lanes(lane_max, lane_arg, lane_sum, a, b, blocks, n);
}

} // namespace cpd::simd::detail
#endif
