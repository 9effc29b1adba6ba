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
#include <cpd/error.hpp>
#include <cpd/grid.hpp>

namespace cpd {

Grid Grid::uniform(std::vector<Interval> box, int per_axis)
{
    Grid g;
    g.counts.assign(box.size(), per_axis);
    g.box = std::move(box);
    return g;
}

Grid Grid::inset(std::vector<Interval> box, std::vector<int> counts, double fraction)
{
    if (box.size() != counts.size())
        throw Error(ErrorKind::Precondition, "grid box and counts differ in dimension");
    for (auto& iv : box) {
        const double d = fraction * iv.length();
        iv = {iv.lo + d, iv.hi - d};
    }
    return Grid{std::move(box), std::move(counts)};
}

std::size_t Grid::size() const
{
    std::size_t n = 1;
    for (int c : counts)
        n *= static_cast<std::size_t>(c);
    return n;
}

double Grid::coord(int axis, int index) const
{
    const Interval& iv = box[static_cast<std::size_t>(axis)];
    const int c = counts[static_cast<std::size_t>(axis)];
    if (c == 1)
        return iv.mid();
    return iv.lo + iv.length() * static_cast<double>(index) / static_cast<double>(c - 1);
}

Eigen::VectorXd Grid::node(std::size_t flat) const
{
    // First axis varies slowest (row-major in (u, v, ...)).
    Eigen::VectorXd x(dim());
    for (int a = dim() - 1; a >= 0; --a) {
        const auto c = static_cast<std::size_t>(counts[static_cast<std::size_t>(a)]);
        x[a] = coord(a, static_cast<int>(flat % c));
        flat /= c;
    }
    return x;
}

} // namespace cpd
