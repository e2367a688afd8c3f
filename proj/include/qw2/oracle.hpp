// Copyright 2026 The qwalk2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force references for the test suites. Nothing here is on a
// production path; everything is deliberately literal and slow.

#ifndef QW2_ORACLE_HPP
#define QW2_ORACLE_HPP

#include <Eigen/Dense>
#include <vector>

#include "qw2/spectral.hpp"
#include "qw2/walk_core.hpp"

namespace qw2::oracle {

/// Largest basis (sites x 4) the dense builders accept.
inline constexpr long kMaxBasis = 10000;

/// Dense operators on an (x1, x2) torus with basis index
/// 4 * (i * n2 + j) + component.
Eigen::MatrixXcd coin_matrix(const Axis& x1, const Axis& x2);
Eigen::MatrixXcd shift_matrix(const Axis& x1, const Axis& x2);
/// Diagonal exp(i phi / |x1 - x2|), exp(i phi0) on the diagonal x1 = x2.
Eigen::MatrixXcd interaction_matrix(const Axis& x1, const Axis& x2, const WalkParams& params);

/// G * D * H as a product of the three matrices above.
Eigen::MatrixXcd dense_step_matrix(const Axis& x1, const Axis& x2, const WalkParams& params);

Eigen::VectorXcd to_vector(const AmplitudeField& field);
/// Inverse of to_vector onto an X1X2 field with the given axes.
AmplitudeField from_vector(const Eigen::VectorXcd& v, const Axis& x1, const Axis& x2);

/// Eigenphases of a unitary from the commuting Hermitian pair
/// (M + M^dagger) / 2 and (M - M^dagger) / (2i), ascending.
std::vector<double> eigenphase_crosscheck(const Eigen::MatrixXcd& unitary);
std::vector<double> eigenphase_crosscheck(const BlochOperator& op);

}  // namespace qw2::oracle

#endif  // QW2_ORACLE_HPP
