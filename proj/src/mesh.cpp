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
#include <cpd/mesh.hpp>
#include <cpd/error.hpp>

#include <cstdio>
#include <fstream>

namespace cpd {

bool MeshGrid::complete() const
{
    for (bool v : valid)
        if (!v)
            return false;
    return true;
}

MeshGrid sample_mesh(const Immersion& m, int nu, int nv, bool with_normals, double orientation, const CoordinateMap& map)
{
    if (m.param_dim() != 2 || nu < 2 || nv < 2)
        throw Error(ErrorKind::Precondition, "meshes need a two-parameter surface and at least 2x2 samples");
    const Interval du = m.domain()[0], dv = m.domain()[1];
    MeshGrid g;
    g.name = m.name();
    g.nu = nu;
    g.nv = nv;
    const std::size_t n = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
    g.points.assign(n, Eigen::Vector3d::Zero());
    g.valid.assign(n, false);
    if (with_normals)
        g.normals.assign(n, Eigen::Vector3d::Zero());
    auto to3 = [&](const Vec& p) -> Eigen::Vector3d {
        if (map)
            return map(p);
        if (p.size() != 3)
            throw Error(ErrorKind::Export, "OBJ export needs a coordinate map outside R^3");
        return p;
    };
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            Vec u(2);
            u << (i + 1 == nu ? du.hi : du.lo + du.length() * i / (nu - 1)),
                (j + 1 == nv ? dv.hi : dv.lo + dv.length() * j / (nv - 1));
            const std::size_t k = g.index(i, j);
            try {
                g.points[k] = to3(m.point(u));
                if (with_normals) {
                    // Push the normal through the coordinate map as a displacement.
                    const Vec p = m.point(u);
                    const Vec xi = orientation * m.normal(u);
                    const double eps = 1e-6;
                    g.normals[k] = ((to3(p + eps * xi) - to3(p - eps * xi)) / (2 * eps)).normalized();
                }
                g.valid[k] = true;
            } catch (const Error&) {
            }
        }
    }
    return g;
}

std::string obj_text(const MeshGrid& mesh, bool allow_holes)
{
    const std::size_t n = static_cast<std::size_t>(mesh.nu) * static_cast<std::size_t>(mesh.nv);
    if (mesh.points.size() != n || mesh.valid.size() != n)
        throw Error(ErrorKind::Export, "mesh arrays do not match the grid size");
    if (!allow_holes && !mesh.complete()) {
        std::string cells;
        int listed = 0;
        for (int i = 0; i < mesh.nu; ++i)
            for (int j = 0; j < mesh.nv; ++j)
                if (!mesh.valid[mesh.index(i, j)] && listed++ < 20)
                    cells += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
        throw Error(ErrorKind::Export, "mesh has missing samples:" + cells + (listed > 20 ? " ..." : ""));
    }
    const bool normals = !mesh.normals.empty();
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "# %s %dx%d\n", mesh.name.c_str(), mesh.nu, mesh.nv);
    out += buf;
    std::vector<std::size_t> id(n, 0);
    std::size_t next = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (!mesh.valid[k])
            continue;
        id[k] = next++;
        const auto& p = mesh.points[k];
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
        out += buf;
    }
    if (normals) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!mesh.valid[k])
                continue;
            const auto& v = mesh.normals[k];
            std::snprintf(buf, sizeof buf, "vn %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
            out += buf;
        }
    }
    auto corner = [&](std::size_t k) {
        return normals ? std::to_string(id[k]) + "//" + std::to_string(id[k]) : std::to_string(id[k]);
    };
    for (int i = 0; i + 1 < mesh.nu; ++i) {
        for (int j = 0; j + 1 < mesh.nv; ++j) {
            const std::size_t a = mesh.index(i, j), b = mesh.index(i + 1, j), c = mesh.index(i + 1, j + 1),
                              d = mesh.index(i, j + 1);
            if (!(mesh.valid[a] && mesh.valid[b] && mesh.valid[c] && mesh.valid[d]))
                continue;
            bool flip = false;
            if (normals) {
                const Eigen::Vector3d face = (mesh.points[b] - mesh.points[a]).cross(mesh.points[c] - mesh.points[a]) +
                                             (mesh.points[c] - mesh.points[a]).cross(mesh.points[d] - mesh.points[a]);
                const Eigen::Vector3d ref = mesh.normals[a] + mesh.normals[b] + mesh.normals[c] + mesh.normals[d];
                flip = face.dot(ref) < 0.0;
            }
            if (!flip) {
                out += "f " + corner(a) + " " + corner(b) + " " + corner(c) + "\n";
                out += "f " + corner(a) + " " + corner(c) + " " + corner(d) + "\n";
            } else {
                out += "f " + corner(a) + " " + corner(c) + " " + corner(b) + "\n";
                out += "f " + corner(a) + " " + corner(d) + " " + corner(c) + "\n";
            }
        }
    }
    return out;
}

void export_obj(const MeshGrid& mesh, const std::string& path, bool allow_holes)
{
    const std::string text = obj_text(mesh, allow_holes);
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(ErrorKind::Export, "cannot open " + path);
    os << text;
    if (!os)
        throw Error(ErrorKind::Export, "write failed for " + path);
}

} // namespace cpd
