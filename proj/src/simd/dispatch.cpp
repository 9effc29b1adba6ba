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

#include <atomic>
#include <stdexcept>

namespace cpd::simd {

namespace {

Backend detect()
{
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2"))
        return Backend::Avx2;
#endif
#if defined(__aarch64__)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> backend{detect()};
    return backend;
}

} // namespace

std::string_view name(Backend b)
{
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool supported(Backend b)
{
    switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b)
{
    if (!supported(b))
        throw std::invalid_argument("SIMD backend not supported on this CPU");
    current().store(b, std::memory_order_relaxed);
}

void reset_backend() { current().store(detect(), std::memory_order_relaxed); }

void segment_distances(double px, double py, const SegmentSpan& segs, std::span<double> dist2,
                       std::span<double> param)
{
    if (dist2.size() < segs.size() || param.size() < segs.size())
        throw std::invalid_argument("segment_distances: output spans too small");
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: return detail::segment_distances_avx2(px, py, segs, dist2.data(), param.data());
#endif
#if defined(__aarch64__)
    case Backend::Neon: return detail::segment_distances_neon(px, py, segs, dist2.data(), param.data());
#endif
    default: return detail::segment_distances_scalar(px, py, segs, dist2.data(), param.data());
    }
}

DiffStats abs_diff_stats(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("abs_diff_stats: size mismatch");
    switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: return detail::abs_diff_stats_avx2(a.data(), b.data(), a.size());
#endif
#if defined(__aarch64__)
    case Backend::Neon: return detail::abs_diff_stats_neon(a.data(), b.data(), a.size());
#endif
    default: return detail::abs_diff_stats_scalar(a.data(), b.data(), a.size());
    }
}

} // namespace cpd::simd
