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
#include <cpd/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cpd {

namespace {

SymmetricEigen eigen2(const Eigen::MatrixXd& m)
{
    const double a = m(0, 0), b = 0.5 * (m(0, 1) + m(1, 0)), c = m(1, 1);
    const double half_diff = 0.5 * (a - c);
    const double r = std::hypot(half_diff, b);
    const double mean = 0.5 * (a + c);
    SymmetricEigen out;
    out.values.resize(2);
    out.values << mean - r, mean + r;
    out.vectors.resize(2, 2);
    if (r == 0.0) {
        out.vectors.setIdentity();
        return out;
    }
    // Rotation angle diagonalising the matrix.
    const double phi = 0.5 * std::atan2(2.0 * b, a - c);
    const double cs = std::cos(phi), sn = std::sin(phi);
    // (cs, sn) belongs to mean + r.
    out.vectors.col(1) << cs, sn;
    out.vectors.col(0) << -sn, cs;
    return out;
}

SymmetricEigen jacobi(const Eigen::MatrixXd& m)
{
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off <= 1e-32 * std::max(1.0, a.squaredNorm()))
            break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    SymmetricEigen out;
    out.values = a.diagonal();
    out.vectors = v;
    return out;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v)
{
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v[idx] < 0)
        v = -v;
}

} // namespace

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m)
{
    const auto n = m.rows();
    if (n != m.cols() || n < 1 || n > 3)
        throw Error(ErrorKind::Precondition, "symmetric_eigen supports 1x1 to 3x3");
    SymmetricEigen raw;
    if (n == 1) {
        raw.values = Eigen::VectorXd::Constant(1, m(0, 0));
        raw.vectors = Eigen::MatrixXd::Identity(1, 1);
    } else if (n == 2) {
        raw = eigen2(m);
    } else {
        raw = jacobi(m);
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return raw.values[i] < raw.values[j]; });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = raw.values[order[static_cast<size_t>(k)]];
        out.vectors.col(k) = raw.vectors.col(order[static_cast<size_t>(k)]);
    }
    return out;
}

GeneralizedEigen generalized_eigen(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b)
{
    const auto n = g.rows();
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::ImmersionDegeneracy, "metric is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::MatrixXd linv = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd c = linv * (0.5 * (b + b.transpose())) * linv.transpose();
    const SymmetricEigen se = symmetric_eigen(c);

    GeneralizedEigen out;
    out.values = se.values;
    out.vectors = linv.transpose() * se.vectors;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double len = std::sqrt(out.vectors.col(k).dot(g * out.vectors.col(k)));
        out.vectors.col(k) /= len;
        fix_sign(out.vectors.col(k));
    }
    // Deterministic order for (near) ties.
    const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        for (Eigen::Index j = 0; j + 1 < n - i; ++j) {
            const bool tie = std::abs(out.values[j] - out.values[j + 1]) <= 1e-12 * scale;
            if (!tie)
                continue;
            const Eigen::VectorXd a = out.vectors.col(j), c2 = out.vectors.col(j + 1);
            if (std::lexicographical_compare(c2.data(), c2.data() + n, a.data(), a.data() + n)) {
                out.vectors.col(j) = c2;
                out.vectors.col(j + 1) = a;
                std::swap(out.values[j], out.values[j + 1]);
            }
        }
    }
    return out;
}

} // namespace cpd
