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

#include "qw2/spectral.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "qw2/errors.hpp"

namespace qw2 {

std::string to_string(ExchangeLabel label) {
  switch (label) {
    case ExchangeLabel::Boson:
      return "boson";
    case ExchangeLabel::Fermion:
      return "fermion";
    case ExchangeLabel::Mixed:
      return "mixed";
  }
  return "mixed";
}

namespace {

void check_k(double k) {
  if (!(k >= -kPi / 2 && k < kPi / 2))
    throw DomainError("pseudo-momentum k must lie in [-pi/2, pi/2)");
}

// H1 (x) H1 rows scaled by 2; row c is applied to the source coin.
constexpr double kCoinRows[4][4] = {
    {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};

}  // namespace

BlochOperator build_bloch(double k, const WalkParams& params) {
  params.validate();
  check_k(k);
  const int n = params.ring_sites;
  BlochOperator op{k, params, Eigen::MatrixXcd::Zero(4 * n, 4 * n)};
  const cplx forward = std::polar(1.0, 2.0 * k);
  const cplx backward = std::polar(1.0, -2.0 * k);
  for (int j = 0; j < n; ++j) {
    const cplx g = coupling(ring_rho(params, j), params);
    const int prev = (j + n - 1) % n;
    const int next = (j + 1) % n;
    // R and L stay on the site, D comes from rho - 2, U from rho + 2.
    const int source[4] = {j, prev, next, j};
    const cplx factor[4] = {g * forward, g, g, g * backward};
    for (int row = 0; row < 4; ++row)
      for (int c = 0; c < 4; ++c)
        op.matrix(4 * j + row, 4 * source[row] + c) = factor[row] * kCoinRows[row][c];
  }
  return op;
}

Eigen::VectorXcd apply_bloch(double k, const WalkParams& params, const Eigen::VectorXcd& v) {
  const int n = params.ring_sites;
  if (v.size() != 4 * n) throw ContractError("vector size does not match the ring");
  Eigen::VectorXcd out(4 * n);
  const cplx forward = std::polar(1.0, 2.0 * k);
  const cplx backward = std::polar(1.0, -2.0 * k);
  for (int j = 0; j < n; ++j) {
    const cplx g = coupling(ring_rho(params, j), params);
    const int source[4] = {j, (j + n - 1) % n, (j + 1) % n, j};
    const cplx factor[4] = {g * forward, g, g, g * backward};
    for (int row = 0; row < 4; ++row) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += kCoinRows[row][c] * v(4 * source[row] + c);
      out(4 * j + row) = factor[row] * acc;
    }
  }
  return out;
}

Eigen::VectorXcd exchange_vector(const WalkParams& params, const Eigen::VectorXcd& v) {
  const int n = params.ring_sites;
  if (v.size() != 4 * n) throw ContractError("vector size does not match the ring");
  Eigen::VectorXcd out(4 * n);
  for (int j = 0; j < n; ++j) {
    const int m = ring_site(params, -ring_rho(params, j));
    out(4 * m + 0) = v(4 * j + 0);
    out(4 * m + 1) = v(4 * j + 2);
    out(4 * m + 2) = v(4 * j + 1);
    out(4 * m + 3) = v(4 * j + 3);
  }
  return out;
}

std::vector<double> rho_profile(const Eigen::VectorXcd& v) {
  std::vector<double> p(static_cast<std::size_t>(v.size() / 4));
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto b = static_cast<Eigen::Index>(4 * j);
    p[j] = std::norm(v(b)) + std::norm(v(b + 1)) + std::norm(v(b + 2)) + std::norm(v(b + 3));
  }
  return p;
}

double inverse_participation_ratio(const Eigen::VectorXcd& v) {
  double s = 0.0;
  for (double p : rho_profile(v)) s += p * p;
  return s;
}

long support_radius(const WalkParams& params, const Eigen::VectorXcd& v) {
  const std::vector<double> p = rho_profile(v);
  std::map<long, double> by_radius;
  double total = 0.0;
  for (int j = 0; j < params.ring_sites; ++j) {
    by_radius[std::labs(ring_rho(params, j))] += p[static_cast<std::size_t>(j)];
    total += p[static_cast<std::size_t>(j)];
  }
  double acc = 0.0;
  for (const auto& [r, w] : by_radius) {
    acc += w;
    if (acc >= 0.99 * total - 1e-12) return r;
  }
  return by_radius.empty() ? 0 : by_radius.rbegin()->first;
}

bool is_bound(const EigenState& s, const WalkParams& params) {
  const double n = params.ring_sites;
  return s.ipr > 5.0 / n && static_cast<double>(s.support_radius) < n / 8.0;
}

ExchangeLabel label_from_expectation(double p) {
  if (std::abs(p - 1.0) < kDegeneracyTol) return ExchangeLabel::Boson;
  if (std::abs(p + 1.0) < kDegeneracyTol) return ExchangeLabel::Fermion;
  return ExchangeLabel::Mixed;
}

std::vector<std::vector<int>> degenerate_clusters(const std::vector<double>& w, double tol) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (i == 0 || w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(i - 1)] >= tol)
      out.emplace_back();
    out.back().push_back(i);
  }
  if (out.size() > 1 && w.front() + 2.0 * kPi - w.back() < tol) {
    auto& last = out.back();
    last.insert(last.end(), out.front().begin(), out.front().end());
    out.erase(out.begin());
  }
  return out;
}

namespace {

// Hopping rho -> rho +- 2 on the ring (coin untouched); commutes with P.
Eigen::VectorXcd apply_hopping(int n, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (int j = 0; j < n; ++j)
    out.segment<4>(4 * j) = v.segment<4>(4 * ((j + n - 1) % n)) + v.segment<4>(4 * ((j + 1) % n));
  return out;
}

Eigen::VectorXcd apply_rho_squared(const WalkParams& params, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (int j = 0; j < params.ring_sites; ++j) {
    const double r = static_cast<double>(ring_rho(params, j));
    out.segment<4>(4 * j) = (r * r) * v.segment<4>(4 * j);
  }
  return out;
}

// Rotates `basis` to diagonalize the compression of a Hermitian operator;
// returns eigenvalues ascending.
template <typename Op>
Eigen::VectorXd diagonalize_compression(Eigen::MatrixXcd& basis, Op&& op) {
  Eigen::MatrixXcd image(basis.rows(), basis.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) image.col(c) = op(basis.col(c).eval());
  Eigen::MatrixXcd comp = basis.adjoint() * image;
  comp = (0.5 * (comp + comp.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(comp);
  basis = (basis * es.eigenvectors()).eval();
  return es.eigenvalues();
}

// Largest-magnitude component made real and positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-9)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

// Projector onto the D and U components.
Eigen::VectorXcd apply_du_weight(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = v;
  for (Eigen::Index j = 0; j < v.size(); j += 4) out(j + CoinVector::R) = out(j + CoinVector::L) = 0.0;
  return out;
}

// Diagonalizes chain[level] inside `v`, then recurses into every group of
// equal eigenvalues with the next operator.
void refine(Eigen::MatrixXcd& v,
            const std::vector<std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>>& chain,
            std::size_t level) {
  if (v.cols() <= 1 || level >= chain.size()) return;
  const Eigen::VectorXd vals = diagonalize_compression(v, chain[level]);
  Eigen::Index start = 0;
  while (start < v.cols()) {
    Eigen::Index end = start + 1;
    while (end < v.cols() && vals(end) - vals(end - 1) < kDegeneracyTol) ++end;
    if (end - start > 1) {
      Eigen::MatrixXcd sub = v.middleCols(start, end - start);
      refine(sub, chain, level + 1);
      v.middleCols(start, end - start) = sub;
    }
    start = end;
  }
}

}  // namespace

Eigen::MatrixXcd resolve_degenerate(const WalkParams& params, const Eigen::MatrixXcd& basis,
                                    DegenerateBasis how) {
  Eigen::MatrixXcd v = basis;
  if (v.cols() <= 1) return v;
  using Apply = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;
  std::vector<Apply> chain{[&](const Eigen::VectorXcd& x) { return exchange_vector(params, x); }};
  if (how == DegenerateBasis::Delocalized) {
    chain.push_back([&](const Eigen::VectorXcd& x) { return apply_hopping(params.ring_sites, x); });
  } else {
    chain.push_back([&](const Eigen::VectorXcd& x) { return apply_rho_squared(params, x); });
    chain.push_back([](const Eigen::VectorXcd& x) { return apply_du_weight(x); });
  }
  refine(v, chain, 0);
  return v;
}

std::vector<EigenState> eigensystem(const BlochOperator& op, const EigensystemOptions& opts) {
  const Eigen::Index dim = op.matrix.rows();
  if (dim == 0 || op.matrix.cols() != dim) throw ContractError("Bloch operator must be square");

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(dim);
  schur.compute(op.matrix, !opts.values_only);
  if (schur.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Schur decomposition failed (dim " << dim << ", k " << op.k << ", phi "
        << op.params.phi << ", |M|_F " << op.matrix.norm() << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::MatrixXcd& t = schur.matrixT();

  std::vector<double> omega(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i)
    omega[static_cast<std::size_t>(i)] = reduce_phase(std::arg(t(i, i)));
  std::vector<int> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return omega[static_cast<std::size_t>(a)] < omega[static_cast<std::size_t>(b)]; });

  std::vector<EigenState> states(static_cast<std::size_t>(dim));
  std::vector<double> sorted(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < states.size(); ++i) {
    sorted[i] = omega[static_cast<std::size_t>(order[i])];
    states[i].omega = sorted[i];
    states[i].k = op.k;
  }
  if (opts.values_only) return states;

  // Schur vectors of a normal matrix are its eigenvectors; the strictly
  // upper part of T measures how far that holds.
  const Eigen::MatrixXcd& u = schur.matrixU();
  double worst = 0.0;
  for (Eigen::Index j = 1; j < dim; ++j) worst = std::max(worst, t.col(j).head(j).norm());
  if (worst > 1e-9) {
    std::ostringstream msg;
    msg << "Schur form is not diagonal to 1e-9 (max off-diagonal column norm " << worst
        << ", dim " << dim << ", k " << op.k << ")";
    throw NumericalError(msg.str());
  }

  for (const auto& cluster : degenerate_clusters(sorted)) {
    Eigen::MatrixXcd basis(dim, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t c = 0; c < cluster.size(); ++c)
      basis.col(static_cast<Eigen::Index>(c)) = u.col(order[static_cast<std::size_t>(cluster[c])]);
    basis = resolve_degenerate(op.params, basis, opts.degenerate_basis);
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      EigenState& s = states[static_cast<std::size_t>(cluster[c])];
      s.vector = basis.col(static_cast<Eigen::Index>(c));
      fix_phase(s.vector);
      const cplx rayleigh = s.vector.dot(apply_bloch(op.k, op.params, s.vector));
      s.omega = reduce_phase(std::arg(rayleigh));
      s.exchange_expectation = s.vector.dot(exchange_vector(op.params, s.vector)).real();
      s.exchange_label = label_from_expectation(s.exchange_expectation);
      s.ipr = inverse_participation_ratio(s.vector);
      s.support_radius = support_radius(op.params, s.vector);
      s.cluster_multiplicity = static_cast<int>(cluster.size());
    }
  }
  return states;
}

std::vector<double> SpectrumTable::omegas_at(double k) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.k == k) out.push_back(r.omega);
  return out;
}

std::vector<double> uniform_k_grid(int points) {
  if (points < 1) throw DomainError("k grid needs at least one point");
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) ks.push_back(-kPi / 2 + kPi * i / points);
  return ks;
}

SpectrumTable band_scan(const WalkParams& params, const std::vector<double>& k_grid,
                        const EigensystemOptions& opts) {
  for (double k : k_grid) check_k(k);
  std::vector<double> ks = k_grid;
  std::sort(ks.begin(), ks.end());
  std::vector<std::vector<SpectrumRow>> per_k(ks.size());
  std::vector<std::string> errors(ks.size());

#pragma omp parallel for schedule(dynamic)
  for (long n = 0; n < static_cast<long>(ks.size()); ++n) {
    const auto idx = static_cast<std::size_t>(n);
    try {
      const auto states = eigensystem(build_bloch(ks[idx], params), opts);
      auto& rows = per_k[idx];
      rows.reserve(states.size());
      for (std::size_t i = 0; i < states.size(); ++i) {
        const EigenState& s = states[i];
        SpectrumRow r;
        r.k = ks[idx];
        r.index = static_cast<int>(i);
        r.omega = s.omega;
        if (!opts.values_only) {
          r.ipr = s.ipr;
          r.support_radius = s.support_radius;
          r.exchange_label = s.exchange_label;
          r.bound = is_bound(s, params);
          r.cluster_multiplicity = s.cluster_multiplicity;
        }
        rows.push_back(r);
      }
    } catch (const std::exception& e) {
      errors[idx] = "k = " + std::to_string(ks[idx]) + ": " + e.what();
    }
  }

  SpectrumTable table;
  for (std::size_t n = 0; n < ks.size(); ++n) {
    table.rows.insert(table.rows.end(), per_k[n].begin(), per_k[n].end());
    if (!errors[n].empty()) table.failures.push_back(errors[n]);
  }
  return table;
}

double phase_multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw ContractError("phase multisets differ in size");
  if (a.empty()) return 0.0;
  for (auto& x : a) x = reduce_phase(x);
  for (auto& x : b) x = reduce_phase(x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const long n = static_cast<long>(a.size());
  const long window = std::min<long>(n - 1, 16);
  double best = std::numeric_limits<double>::infinity();
  // Elements near the seam may sit at opposite ends of the two lists.
  for (long shift = -window; shift <= window; ++shift) {
    double worst = 0.0;
    for (long i = 0; i < n && worst < best; ++i) {
      long j = (i + shift) % n;
      if (j < 0) j += n;
      worst = std::max(worst, std::abs(reduce_phase(a[static_cast<std::size_t>(i)] -
                                                    b[static_cast<std::size_t>(j)])));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace qw2
