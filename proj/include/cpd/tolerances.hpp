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

namespace cpd {

// Defaults shared by every module. All of them can be overridden per call
// through the Tolerances value passed down, or per check from a scene file.
struct Tolerances {
    double unit_speed = 1e-6;
    double sym = 1e-6;
    double frenet = 1e-5;
    double num_closed = 1e-8;
    double num_fd = 1e-5;
    double orth = 1e-8;
    double conf = 1e-6;
    double eps_regular = 1e-12;
    double eps_det = 1e-14;
    double eps_umbilic = 1e-9;
    double eps_field = 1e-12;
    double eps_transversal_rel = 1e-8;
    double eps_costheta = 1e-3;
    double fd_step = 1e-4;
    double cond_max = 1e12;
};

inline constexpr Tolerances default_tolerances{};

} // namespace cpd
