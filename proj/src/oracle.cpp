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

#include "qw2/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qw2/errors.hpp"

namespace qw2::oracle {

namespace {

long basis_size(const Axis& x1, const Axis& x2) {
  const long n = 4 * x1.count * x2.count;
  if (n > kMaxBasis) throw DomainError("dense oracle basis exceeds the size cap");
  return n;
}

long index(const Axis& x2, long i, long j, int c) { return 4 * (i * x2.count + j) + c; }

long wrap(long i, long n) { return ((i % n) + n) % n; }

}  // namespace

Eigen::MatrixXcd coin_matrix(const Axis& x1, const Axis& x2) {
  const long n = basis_size(x1, x2);
  Eigen::Matrix4cd h;
  h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  h *= 0.5;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long s = 0; s < x1.count * x2.count; ++s) m.block<4, 4>(4 * s, 4 * s) = h;
  return m;
}

Eigen::MatrixXcd shift_matrix(const Axis& x1, const Axis& x2) {
  const long n = basis_size(x1, x2);
  // r: (+1, +1), d: (+1, -1), u: (-1, +1), l: (-1, -1)
  const long dx1[4] = {+1, +1, -1, -1};
  const long dx2[4] = {+1, -1, +1, -1};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 0; i < x1.count; ++i)
    for (long j = 0; j < x2.count; ++j)
      for (int c = 0; c < 4; ++c)
        m(index(x2, wrap(i + dx1[c], x1.count), wrap(j + dx2[c], x2.count), c),
          index(x2, i, j, c)) = 1.0;
  return m;
}

Eigen::MatrixXcd interaction_matrix(const Axis& x1, const Axis& x2, const WalkParams& params) {
  const long n = basis_size(x1, x2);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 0; i < x1.count; ++i)
    for (long j = 0; j < x2.count; ++j) {
      const long rho = x1.at(i) - x2.at(j);
      const double phase =
          rho == 0 ? params.phi0 : params.phi / static_cast<double>(std::labs(rho));
      for (int c = 0; c < 4; ++c) m(index(x2, i, j, c), index(x2, i, j, c)) = std::polar(1.0, phase);
    }
  return m;
}

Eigen::MatrixXcd dense_step_matrix(const Axis& x1, const Axis& x2, const WalkParams& params) {
  return interaction_matrix(x1, x2, params) * shift_matrix(x1, x2) * coin_matrix(x1, x2);
}

Eigen::VectorXcd to_vector(const AmplitudeField& field) {
  if (field.coords() != Coords::X1X2) throw ContractError("oracle vectors use X1X2 fields");
  const Axis& x1 = field.axis0();
  const Axis& x2 = field.axis1();
  Eigen::VectorXcd v(4 * x1.count * x2.count);
  for (long i = 0; i < x1.count; ++i)
    for (long j = 0; j < x2.count; ++j)
      for (int c = 0; c < 4; ++c) v(index(x2, i, j, c)) = field.at(i, j)[static_cast<std::size_t>(c)];
  return v;
}

AmplitudeField from_vector(const Eigen::VectorXcd& v, const Axis& x1, const Axis& x2) {
  AmplitudeField f = AmplitudeField::x1x2(x1, x2);
  for (long i = 0; i < x1.count; ++i)
    for (long j = 0; j < x2.count; ++j) {
      CoinVector c;
      for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] = v(index(x2, i, j, k));
      f.set_index(i, j, c);
    }
  return f;
}

namespace {

constexpr double kSplitTol = 1e-7;

// Orders the columns of `basis` (spanning an invariant subspace) into joint
// eigenvectors of the commuting Hermitian pair: diagonalize `first`, then
// split near-equal eigenvalue groups with `second`, then with `first` again.
void joint_diagonalize(Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& first,
                       const Eigen::MatrixXcd& second, int depth) {
  Eigen::MatrixXcd comp = basis.adjoint() * first * basis;
  comp = (0.5 * (comp + comp.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(comp);
  basis = (basis * es.eigenvectors()).eval();
  if (depth == 0) return;
  const Eigen::VectorXd& e = es.eigenvalues();
  Eigen::Index start = 0;
  while (start < basis.cols()) {
    Eigen::Index end = start + 1;
    while (end < basis.cols() && e(end) - e(end - 1) < kSplitTol) ++end;
    if (end - start > 1) {
      Eigen::MatrixXcd sub = basis.middleCols(start, end - start);
      joint_diagonalize(sub, second, first, depth - 1);
      basis.middleCols(start, end - start) = sub;
    }
    start = end;
  }
}

}  // namespace

std::vector<double> eigenphase_crosscheck(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd cos_part = 0.5 * (m + m.adjoint());
  const Eigen::MatrixXcd sin_part = (m - m.adjoint()) / cplx(0.0, 2.0);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  joint_diagonalize(basis, cos_part, sin_part, 2);

  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const auto v = basis.col(c);
    const double cs = v.dot(cos_part * v).real();
    const double sn = v.dot(sin_part * v).real();
    phases.push_back(reduce_phase(std::atan2(sn, cs)));
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::vector<double> eigenphase_crosscheck(const BlochOperator& op) {
  return eigenphase_crosscheck(op.matrix);
}

}  // namespace qw2::oracle
