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

#include <cpd/immersion.hpp>

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace cpd {

/// Surface samples on an nu x nv parameter grid, row-major (u index outer).
struct MeshGrid {
    std::string name = "surface";
    int nu = 0;
    int nv = 0;
    std::vector<Eigen::Vector3d> points;
    std::vector<Eigen::Vector3d> normals; // empty when not sampled
    std::vector<bool> valid;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(j); }
    bool complete() const;
};

/// Maps ambient coordinates to the three written to the file (identity for R^3).
using CoordinateMap = std::function<Eigen::Vector3d(const Vec&)>;

/// Samples m on the full closed parameter rectangle. Points where evaluation
/// throws become holes.
MeshGrid sample_mesh(const Immersion& m, int nu, int nv, bool with_normals = true, double orientation = 1.0,
                     const CoordinateMap& map = {});

/// OBJ text: `v` lines in grid order, optional `vn`, two triangles per cell
/// wound so that their normal agrees with the sampled normal. Throws Export
/// listing the missing cells when there are holes and `allow_holes` is false.
std::string obj_text(const MeshGrid& mesh, bool allow_holes = false);
void export_obj(const MeshGrid& mesh, const std::string& path, bool allow_holes = false);

} // namespace cpd
