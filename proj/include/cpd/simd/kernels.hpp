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

#include <cstddef>
#include <span>
#include <string_view>

namespace cpd::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view name(Backend b);
bool supported(Backend b);
/// Best backend the running CPU supports, unless overridden.
Backend active_backend();
/// Pins the backend (tests and benchmarks); throws std::invalid_argument if unsupported.
void force_backend(Backend b);
void reset_backend();

/// Segments in structure-of-arrays form: start (ax, ay), direction (dx, dy),
/// and 1/|d|^2 (0 for degenerate segments).
struct SegmentSpan {
    std::span<const double> ax, ay, dx, dy, inv_len2;
    std::size_t size() const { return ax.size(); }
};

/// Squared distance from (px, py) to each segment and the clamped projection
/// parameter in [0, 1]. Results are bitwise identical across backends.
void segment_distances(double px, double py, const SegmentSpan& segs, std::span<double> dist2,
                       std::span<double> param);

struct DiffStats {
    double max = 0.0;
    double sum = 0.0;
    std::size_t argmax = 0;
    std::size_t count = 0;
};

/// max, sum and first argmax of |a_i - b_i|. Summation uses four interleaved
/// partial sums in every backend, so results are bitwise identical.
DiffStats abs_diff_stats(std::span<const double> a, std::span<const double> b);

namespace detail {
void segment_distances_scalar(double px, double py, const SegmentSpan& segs, double* dist2, double* param);
DiffStats abs_diff_stats_scalar(const double* a, const double* b, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void segment_distances_avx2(double px, double py, const SegmentSpan& segs, double* dist2, double* param);
DiffStats abs_diff_stats_avx2(const double* a, const double* b, std::size_t n);
#endif
#if defined(__aarch64__)
void segment_distances_neon(double px, double py, const SegmentSpan& segs, double* dist2, double* param);
DiffStats abs_diff_stats_neon(const double* a, const double* b, std::size_t n);
#endif
// Shared lane-combine step so all backends reduce identically.
DiffStats combine_lanes(const double (&lane_max)[4], const std::size_t (&lane_arg)[4],
                        const double (&lane_sum)[4], const double* a, const double* b,
                        std::size_t tail_begin, std::size_t n);
} // namespace detail

} // namespace cpd::simd
