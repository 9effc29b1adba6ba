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

#include <cpd/numdiff.hpp>

#include <Eigen/Dense>

#include <vector>

namespace cpd {

/// Tensor grid over a box in R^n (n <= 3); nodes include the end points.
struct Grid {
    std::vector<Interval> box;
    std::vector<int> counts;

    static Grid uniform(std::vector<Interval> box, int per_axis);
    /// Box shrunk by `fraction` of each side on both ends (keeps stencils inside).
    static Grid inset(std::vector<Interval> box, std::vector<int> counts, double fraction);

    int dim() const { return static_cast<int>(box.size()); }
    std::size_t size() const;
    Eigen::VectorXd node(std::size_t flat) const;
    double coord(int axis, int index) const;
};

} // namespace cpd
