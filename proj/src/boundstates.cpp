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

#include "qw2/boundstates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qw2/errors.hpp"

namespace qw2 {

namespace {

constexpr double kAnalyticResidualTol = 1e-12;

void fill_metrics(EigenState& s, const WalkParams& params) {
  s.exchange_expectation = s.vector.dot(exchange_vector(params, s.vector)).real();
  s.exchange_label = label_from_expectation(s.exchange_expectation);
  s.ipr = inverse_participation_ratio(s.vector);
  s.support_radius = support_radius(params, s.vector);
}

EigenState finish_analytic(Eigen::VectorXcd v, double omega, const WalkParams& params,
                           const char* what) {
  EigenState s;
  s.k = 0.0;
  s.omega = reduce_phase(omega);
  s.vector = v.normalized();
  fill_metrics(s, params);
  const double res = eigen_residual(s, params);
  if (res > kAnalyticResidualTol)
    throw NumericalError(std::string(what) + " is not an eigenstate on this ring (residual " +
                         std::to_string(res) + ")");
  return s;
}

}  // namespace

double eigen_residual(const EigenState& s, const WalkParams& params) {
  const Eigen::VectorXcd mv = apply_bloch(s.k, params, s.vector);
  return (mv - std::polar(1.0, s.omega) * s.vector).cwiseAbs().maxCoeff();
}

std::vector<EigenState> classify(const std::vector<EigenState>& cluster, const WalkParams& params) {
  if (cluster.empty()) return {};
  const double k = cluster.front().k;
  const Eigen::Index dim = cluster.front().vector.size();
  std::vector<double> omegas;
  for (const auto& s : cluster) {
    if (s.k != k) throw ContractError("classify: states carry different pseudo-momenta");
    if (s.vector.size() != dim) throw ContractError("classify: vector sizes differ");
    if (std::abs(reduce_phase(s.omega - cluster.front().omega)) >=
        kDegeneracyTol * static_cast<double>(cluster.size()))
      throw ContractError("classify: eigenphases are not degenerate");
    omegas.push_back(s.omega);
  }

  Eigen::MatrixXcd input(dim, static_cast<Eigen::Index>(cluster.size()));
  for (std::size_t c = 0; c < cluster.size(); ++c)
    input.col(static_cast<Eigen::Index>(c)) = cluster[c].vector;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(input);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, input.cols());
  Eigen::MatrixXcd rotated = resolve_degenerate(params, q, DegenerateBasis::Localized);

  // Input overlaps weight the eigenphase of each rotated vector.
  const Eigen::MatrixXcd overlaps = input.adjoint() * rotated;
  std::vector<EigenState> out;
  for (Eigen::Index c = 0; c < rotated.cols(); ++c) {
    EigenState s;
    s.k = k;
    s.vector = rotated.col(c);
    cplx acc = 0.0;
    double weight = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      const double w = std::norm(overlaps(static_cast<Eigen::Index>(i), c));
      acc += w * std::polar(1.0, omegas[i]);
      weight += w;
    }
    s.omega = weight > 0.0 ? reduce_phase(std::arg(acc)) : cluster.front().omega;
    fill_metrics(s, params);
    s.cluster_multiplicity = static_cast<int>(cluster.size());
    out.push_back(std::move(s));
  }
  return out;
}

EigenState build_dimer(long rho0, const WalkParams& params) {
  params.validate();
  const bool odd = params.parity == Parity::Odd;
  if (parity_of(rho0) != params.parity)
    throw DomainError("rho0 has the wrong parity for this sector");
  if (odd && std::labs(rho0) == 1)
    throw DomainError("rho0 = +-1 belongs to the near-dimer family; use build_near_dimer");
  if (!odd && rho0 == 0) throw DomainError("rho0 = 0 is the self-energy state; use build_phi0_state");
  if (!in_ring_domain(params, rho0)) throw DomainError("rho0 lies outside the ring");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * params.ring_sites);
  const int j = ring_site(params, rho0);
  v(4 * j + CoinVector::R) = 1.0;
  v(4 * j + CoinVector::L) = 1.0;
  return finish_analytic(std::move(v), params.phi / static_cast<double>(std::labs(rho0)), params,
                         "dimer");
}

EigenState build_near_dimer(NearDimerBranch branch, const WalkParams& params) {
  params.validate();
  if (params.parity != Parity::Odd) throw DomainError("near-dimer states live in the odd sector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * params.ring_sites);
  const int plus = ring_site(params, 1);
  const int minus = ring_site(params, -1);
  switch (branch) {
    case NearDimerBranch::PlusOne:
      v(4 * plus + CoinVector::R) = v(4 * plus + CoinVector::L) = 1.0;
      break;
    case NearDimerBranch::MinusOne:
      v(4 * minus + CoinVector::R) = v(4 * minus + CoinVector::L) = 1.0;
      break;
    case NearDimerBranch::Symmetric:
      // U_{-1} = D_{+1} = b, R_{+-1} = b/2, L_{+-1} = R_{+-1} - b.
      v(4 * plus + CoinVector::D) = v(4 * minus + CoinVector::U) = 1.0;
      v(4 * plus + CoinVector::R) = v(4 * minus + CoinVector::R) = 0.5;
      v(4 * plus + CoinVector::L) = v(4 * minus + CoinVector::L) = -0.5;
      break;
  }
  return finish_analytic(std::move(v), params.phi, params, "near-dimer state");
}

EigenState build_phi0_state(const WalkParams& params) {
  params.validate();
  if (params.parity != Parity::Even) throw DomainError("the rho = 0 state needs the even sector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * params.ring_sites);
  const int j = ring_site(params, 0);
  v(4 * j + CoinVector::R) = 1.0;
  v(4 * j + CoinVector::L) = 1.0;
  return finish_analytic(std::move(v), params.phi0, params, "rho = 0 state");
}

MoleculeRecord to_molecule(const EigenState& s, const WalkParams& params) {
  MoleculeRecord m;
  m.omega = s.omega;
  m.k = s.k;
  m.exchange_label = s.exchange_label;
  m.exchange_expectation = s.exchange_expectation;
  m.multiplicity = s.cluster_multiplicity;
  m.ipr = s.ipr;
  m.support_radius = s.support_radius;
  for (int j = 0; j < params.ring_sites; ++j) {
    auto comp = [&](int c) { return std::norm(s.vector(4 * j + c)); };
    m.rho.push_back(ring_rho(params, j));
    m.r2.push_back(comp(CoinVector::R));
    m.d2.push_back(comp(CoinVector::D));
    m.u2.push_back(comp(CoinVector::U));
    m.l2.push_back(comp(CoinVector::L));
    m.p_rho.push_back(m.r2.back() + m.d2.back() + m.u2.back() + m.l2.back());
  }
  return m;
}

std::vector<MoleculeRecord> catalog(const WalkParams& params, double k) {
  const auto states =
      eigensystem(build_bloch(k, params), {DegenerateBasis::Localized, /*values_only=*/false});
  std::vector<MoleculeRecord> out;
  for (const auto& s : states)
    if (is_bound(s, params)) out.push_back(to_molecule(s, params));
  return out;
}

EigenState select_state(const WalkParams& params, double omega, ExchangeLabel label, int index,
                        double tol) {
  if (index < 0) throw DomainError("state index must be non-negative");
  const auto states = eigensystem(build_bloch(0.0, params), {DegenerateBasis::Localized, false});
  int seen = 0;
  for (const auto& s : states) {
    if (s.exchange_label != label || std::abs(reduce_phase(s.omega - omega)) > tol) continue;
    if (seen++ == index) return s;
  }
  throw DomainError("no eigenstate number " + std::to_string(index) + " with label " +
                    to_string(label) + " near omega = " + std::to_string(omega) + " (found " +
                    std::to_string(seen) + ")");
}

Eigen::VectorXcd project_onto(const EigenState& state, const Eigen::VectorXcd& seed) {
  if (seed.size() != state.vector.size()) throw ContractError("seed size does not match the ring");
  const cplx overlap = state.vector.dot(seed);
  if (std::abs(overlap) < 1e-12 * std::max(1.0, seed.norm()))
    throw DomainError("seed has no overlap with the requested eigenstate");
  return state.vector * (overlap / std::abs(overlap));
}

Eigen::VectorXcd ring_vector(const WalkParams& params, const std::vector<RhoCoin>& profile) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4 * params.ring_sites);
  for (const auto& rc : profile) {
    if (!in_ring_domain(params, rc.rho) || parity_of(rc.rho) != params.parity)
      throw DomainError("profile site " + std::to_string(rc.rho) + " is not on the ring");
    const int j = ring_site(params, rc.rho);
    for (int c = 0; c < 4; ++c) v(4 * j + c) += rc.coin[static_cast<std::size_t>(c)];
  }
  return v;
}

std::vector<RhoCoin> ring_profile(const WalkParams& params, const Eigen::VectorXcd& v,
                                  double threshold) {
  std::vector<RhoCoin> out;
  for (int j = 0; j < params.ring_sites; ++j) {
    RhoCoin rc;
    rc.rho = ring_rho(params, j);
    bool keep = false;
    for (int c = 0; c < 4; ++c) {
      rc.coin[static_cast<std::size_t>(c)] = v(4 * j + c);
      keep = keep || std::abs(v(4 * j + c)) > threshold;
    }
    if (keep) out.push_back(rc);
  }
  return out;
}

}  // namespace qw2
