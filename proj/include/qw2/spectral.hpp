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

#ifndef QW2_SPECTRAL_HPP
#define QW2_SPECTRAL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qw2/walk_core.hpp"

namespace qw2 {

/// Eigenphases closer than this are treated as one degenerate cluster.
inline constexpr double kDegeneracyTol = 1e-8;

/// One-step operator of the plane-wave ansatz at pseudo-momentum k on the
/// relative-coordinate ring. Basis index 4 * site + component, components
/// ordered R, D, U, L.
struct BlochOperator {
  double k = 0.0;
  WalkParams params;
  Eigen::MatrixXcd matrix;

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

enum class ExchangeLabel { Boson, Fermion, Mixed };

std::string to_string(ExchangeLabel label);

struct EigenState {
  double omega = 0.0;  ///< eigenphase in [-pi, pi)
  double k = 0.0;
  Eigen::VectorXcd vector;
  ExchangeLabel exchange_label = ExchangeLabel::Mixed;
  double exchange_expectation = 0.0;  ///< <v|P|v>
  double ipr = 0.0;
  long support_radius = 0;
  int cluster_multiplicity = 1;
};

/// How a degenerate cluster is resolved once it is split by exchange
/// symmetry. Delocalized diagonalizes the rho-hopping operator inside the
/// cluster (plane-wave-like states), Localized diagonalizes rho^2 and then
/// the D/U component weight.
enum class DegenerateBasis { Delocalized, Localized };

/// Pseudo-momentum must lie in [-pi/2, pi/2).
BlochOperator build_bloch(double k, const WalkParams& params);

/// Matrix-free application of the Bloch operator.
Eigen::VectorXcd apply_bloch(double k, const WalkParams& params, const Eigen::VectorXcd& v);

/// Particle exchange on ring vectors: (R,D,U,L)(rho) -> (R,U,D,L)(-rho).
Eigen::VectorXcd exchange_vector(const WalkParams& params, const Eigen::VectorXcd& v);

/// P_rho = sum over components, indexed by ring site.
std::vector<double> rho_profile(const Eigen::VectorXcd& v);
double inverse_participation_ratio(const Eigen::VectorXcd& v);
/// Smallest r with sum_{|rho| <= r} P_rho >= 0.99.
long support_radius(const WalkParams& params, const Eigen::VectorXcd& v);

/// Localized-state criterion: ipr > 5/N and support_radius < N/8.
bool is_bound(const EigenState& s, const WalkParams& params);

struct EigensystemOptions {
  DegenerateBasis degenerate_basis = DegenerateBasis::Delocalized;
  /// Skip eigenvectors and degeneracy resolution; only omega is filled.
  bool values_only = false;
};

/// All 4N eigenpairs sorted by omega, orthonormal, with every degenerate
/// cluster rotated onto exchange eigenvectors. Members of a cluster stay in
/// resolution order (their omegas agree to kDegeneracyTol); a cluster
/// straddling -pi / pi keeps its members at both ends.
std::vector<EigenState> eigensystem(const BlochOperator& op, const EigensystemOptions& opts = {});

/// Groups indices of an ascending phase list whose neighbours are closer
/// than `tol`, merging the first and last groups across the -pi / pi seam.
std::vector<std::vector<int>> degenerate_clusters(const std::vector<double>& sorted_omegas,
                                                  double tol = kDegeneracyTol);

/// Rotates the orthonormal columns of `basis` (an invariant subspace of the
/// Bloch operator) onto exchange eigenvectors; sub-degeneracies left after
/// that are resolved per `how`. Columns come out ordered by exchange
/// eigenvalue.
Eigen::MatrixXcd resolve_degenerate(const WalkParams& params, const Eigen::MatrixXcd& basis,
                                    DegenerateBasis how);

/// Exchange label from <v|P|v> with tolerance kDegeneracyTol.
ExchangeLabel label_from_expectation(double p_expectation);

struct SpectrumRow {
  double k = 0.0;
  int index = 0;
  double omega = 0.0;
  double ipr = 0.0;
  long support_radius = 0;
  ExchangeLabel exchange_label = ExchangeLabel::Mixed;
  bool bound = false;
  int cluster_multiplicity = 1;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;  ///< sorted by k, then omega
  /// Messages for k values whose diagonalization failed.
  std::vector<std::string> failures;

  bool complete() const { return failures.empty(); }
  /// Eigenphases of the scan row group at `k`.
  std::vector<double> omegas_at(double k) const;
};

/// `points` uniform values over [-pi/2, pi/2).
std::vector<double> uniform_k_grid(int points = 129);

SpectrumTable band_scan(const WalkParams& params, const std::vector<double>& k_grid,
                        const EigensystemOptions& opts = {});

/// Largest distance between matched elements of two phase multisets,
/// measured on the circle. Sizes must agree.
double phase_multiset_distance(std::vector<double> a, std::vector<double> b);

}  // namespace qw2

#endif  // QW2_SPECTRAL_HPP
