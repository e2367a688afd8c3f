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

#ifndef QW2_BOUNDSTATES_HPP
#define QW2_BOUNDSTATES_HPP

#include <vector>

#include "qw2/evolution.hpp"
#include "qw2/spectral.hpp"
#include "qw2/walk_core.hpp"

namespace qw2 {

/// A localized eigenstate with its relative-coordinate profiles.
struct MoleculeRecord {
  double omega = 0.0;
  double k = 0.0;
  ExchangeLabel exchange_label = ExchangeLabel::Mixed;
  double exchange_expectation = 0.0;
  int multiplicity = 1;
  double ipr = 0.0;
  long support_radius = 0;
  std::vector<long> rho;  ///< ring sites in ascending rho
  std::vector<double> p_rho;
  std::vector<double> r2, d2, u2, l2;  ///< |R|^2, |D|^2, |U|^2, |L|^2
};

/// Rotates a degenerate set of eigenstates (same k, eigenphases within
/// kDegeneracyTol) onto exchange eigenvectors and labels them.
std::vector<EigenState> classify(const std::vector<EigenState>& cluster, const WalkParams& params);

/// Two walkers held at fixed distance rho0 (k = 0): R = L = 1/sqrt2 at
/// rho0, omega = phi / |rho0|. Needs |rho0| >= 3 (odd) or >= 2 (even).
EigenState build_dimer(long rho0, const WalkParams& params);

enum class NearDimerBranch { PlusOne, MinusOne, Symmetric };

/// The omega = phi states on rho = +-1 of the odd sector at k = 0:
/// PlusOne / MinusOne occupy a single site with L = R; Symmetric has
/// U_{-1} = D_{+1} != 0 and is orthogonal to the other two.
EigenState build_near_dimer(NearDimerBranch branch, const WalkParams& params);

/// Even sector, k = 0: the rho = 0 state with omega = phi0.
EigenState build_phi0_state(const WalkParams& params);

/// Every state at this k passing is_bound, ascending in omega. Degenerate
/// clusters are resolved in the Localized basis.
std::vector<MoleculeRecord> catalog(const WalkParams& params, double k);

MoleculeRecord to_molecule(const EigenState& s, const WalkParams& params);

/// The `index`-th k = 0 eigenstate (in eigensystem order, Localized
/// basis) with the given exchange label and eigenphase within `tol` of
/// omega. DomainError if there is no such state.
EigenState select_state(const WalkParams& params, double omega, ExchangeLabel label, int index = 0,
                        double tol = 1e-6);

/// Projection of a ring vector onto one eigenstate, normalized.
/// DomainError when the overlap vanishes.
Eigen::VectorXcd project_onto(const EigenState& state, const Eigen::VectorXcd& seed);

/// Ring vector <-> rho profile. Sites with all components below
/// `threshold` in magnitude are dropped.
Eigen::VectorXcd ring_vector(const WalkParams& params, const std::vector<RhoCoin>& profile);
std::vector<RhoCoin> ring_profile(const WalkParams& params, const Eigen::VectorXcd& v,
                                  double threshold = 1e-14);

/// Max |M v - e^{i omega} v| at the state's k.
double eigen_residual(const EigenState& s, const WalkParams& params);

}  // namespace qw2

#endif  // QW2_BOUNDSTATES_HPP
