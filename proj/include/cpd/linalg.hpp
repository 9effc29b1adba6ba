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

#include <Eigen/Dense>

namespace cpd {

struct SymmetricEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns, Euclidean-orthonormal
};

/// Eigen-decomposition of a symmetric matrix of size 1, 2 or 3.
/// 2x2 uses the closed form, 3x3 cyclic Jacobi rotations.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m);

struct GeneralizedEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns, unit length in the metric `g`
};

/// Solves b v = lambda g v for symmetric b and SPD g (n <= 3), i.e. the
/// eigenproblem of g^-1 b. Ties are ordered lexicographically on the vector
/// components and each vector's sign is fixed so its largest entry is positive.
GeneralizedEigen generalized_eigen(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b);

} // namespace cpd
