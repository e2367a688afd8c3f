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

#include "qw2/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qw2/errors.hpp"

namespace qw2 {

namespace {

constexpr long kMargin = 4;

// Inclusive coordinate bounds of an initial state's support.
struct Bounds {
  long lo0, hi0, lo1, hi1;
};

void check_coin(const CoinVector& c) {
  if (!c.finite()) throw DomainError("initial coin is not finite");
  if (std::abs(c.norm2() - 1.0) > 1e-12) throw DomainError("initial coin must be normalized");
}

double gaussian_amplitude(double x, double center, double width) {
  const double d = x - center;
  return std::exp(-d * d / (4.0 * width * width));
}

}  // namespace

SigmaSegment SigmaSegment::uniform(long rho, const CoinVector& coin, long sigma_min,
                                   long sigma_max) {
  return {{{rho, coin}}, sigma_min, sigma_max};
}

std::vector<long> SigmaSegment::sigma_sites() const {
  std::vector<long> out;
  for (long s = sigma_min; s <= sigma_max; s += 2) out.push_back(s);
  return out;
}

long GaussianPair::cutoff() const { return static_cast<long>(std::ceil(12.6 * width)); }

Coords natural_coords(const InitialStateSpec& init) {
  if (const auto* p = std::get_if<PointState>(&init)) return p->coords;
  if (std::holds_alternative<SigmaSegment>(init)) return Coords::RhoSigma;
  return Coords::X1X2;
}

namespace {

Bounds support_bounds(const InitialStateSpec& init, const WalkParams& params) {
  if (const auto* p = std::get_if<PointState>(&init)) {
    check_coin(p->coin);
    if (p->coords == Coords::RhoSigma) {
      if (parity_of(p->a) != parity_of(p->b)) throw DomainError("rho and sigma must share parity");
      if (parity_of(p->a) != params.parity)
        throw DomainError("point rho does not belong to the configured parity sector");
    }
    return {p->a, p->a, p->b, p->b};
  }
  if (const auto* s = std::get_if<SigmaSegment>(&init)) {
    if (s->profile.empty()) throw DomainError("sigma segment needs a non-empty rho profile");
    if (s->sigma_max < s->sigma_min) throw DomainError("empty sigma range");
    if (parity_of(s->sigma_min) != params.parity || parity_of(s->sigma_max) != params.parity)
      throw DomainError("sigma range must lie on the sector's sublattice");
    long lo = s->profile.front().rho, hi = lo;
    for (const auto& rc : s->profile) {
      if (parity_of(rc.rho) != params.parity)
        throw DomainError("profile rho does not belong to the configured parity sector");
      if (!rc.coin.finite()) throw DomainError("profile coin is not finite");
      lo = std::min(lo, rc.rho);
      hi = std::max(hi, rc.rho);
    }
    return {lo, hi, s->sigma_min, s->sigma_max};
  }
  const auto& g = std::get<GaussianPair>(init);
  check_coin(g.coin);
  if (!(g.width > 0.0)) throw DomainError("Gaussian width must be positive");
  const long c = g.cutoff();
  return {static_cast<long>(std::floor(g.x1_center)) - c,
          static_cast<long>(std::ceil(g.x1_center)) + c,
          static_cast<long>(std::floor(g.x2_center)) - c,
          static_cast<long>(std::ceil(g.x2_center)) + c};
}

void fill(AmplitudeField& f, const InitialStateSpec& init) {
  if (const auto* p = std::get_if<PointState>(&init)) {
    f.set(p->a, p->b, p->coin);
  } else if (const auto* s = std::get_if<SigmaSegment>(&init)) {
    for (long sigma : s->sigma_sites())
      for (const auto& rc : s->profile) {
        CoinVector v = f.value(rc.rho, sigma);
        for (std::size_t c = 0; c < 4; ++c) v[c] += rc.coin[c];
        f.set(rc.rho, sigma, v);
      }
  } else {
    const auto& g = std::get<GaussianPair>(init);
    const long c = g.cutoff();
    const Axis& x1 = f.axis0();
    const Axis& x2 = f.axis1();
    for (long i = 0; i < x1.count; ++i) {
      const double a = static_cast<double>(x1.at(i));
      if (std::abs(a - g.x1_center) > static_cast<double>(c)) continue;
      const cplx f1 = gaussian_amplitude(a, g.x1_center, g.width) * std::polar(1.0, g.k1 * a);
      for (long j = 0; j < x2.count; ++j) {
        const double b = static_cast<double>(x2.at(j));
        if (std::abs(b - g.x2_center) > static_cast<double>(c)) continue;
        const cplx amp =
            f1 * gaussian_amplitude(b, g.x2_center, g.width) * std::polar(1.0, g.k2 * b);
        CoinVector v;
        for (std::size_t k = 0; k < 4; ++k) v[k] = amp * g.coin[k];
        f.set_index(i, j, v);
      }
    }
  }
  const double n2 = f.norm2();
  if (!(n2 > 0.0)) throw DomainError("initial state has zero norm");
  f.scale(1.0 / std::sqrt(n2));
}

AmplitudeField make_field(Coords coords, const Bounds& b, long pad0, long pad1) {
  if (coords == Coords::X1X2) {
    return AmplitudeField::x1x2({b.lo0 - pad0, b.hi0 - b.lo0 + 2 * pad0 + 1, 1},
                                {b.lo1 - pad1, b.hi1 - b.lo1 + 2 * pad1 + 1, 1});
  }
  return AmplitudeField::rho_sigma(b.lo0 - 2 * pad0, (b.hi0 - b.lo0) / 2 + 2 * pad0 + 1,
                                   b.lo1 - 2 * pad1, (b.hi1 - b.lo1) / 2 + 2 * pad1 + 1);
}

}  // namespace

AmplitudeField build_initial(const InitialStateSpec& init, const WalkParams& params, int t_max) {
  if (t_max < 0) throw DomainError("t_max must be non-negative");
  const Bounds b = support_bounds(init, params);
  const long pad = t_max + kMargin;
  AmplitudeField f = make_field(natural_coords(init), b, pad, pad);
  fill(f, init);
  return f;
}

AmplitudeField build_initial_on(const InitialStateSpec& init, const WalkParams& params,
                                const Axis& axis0, const Axis& axis1) {
  const Bounds b = support_bounds(init, params);
  const Coords coords = natural_coords(init);
  const long stride = coords == Coords::X1X2 ? 1 : 2;
  if (!(b.lo0 > axis0.origin && b.hi0 < axis0.origin + stride * (axis0.count - 1) &&
        b.lo1 > axis1.origin && b.hi1 < axis1.origin + stride * (axis1.count - 1)))
    throw DomainError("initial state overlaps the lattice boundary");
  AmplitudeField f = coords == Coords::X1X2
                         ? AmplitudeField::x1x2(axis0, axis1)
                         : AmplitudeField::rho_sigma(axis0.origin, axis0.count, axis1.origin,
                                                     axis1.count);
  fill(f, init);
  return f;
}

namespace {

void check_edges(const AmplitudeField& f) {
  const IndexBox& s = f.support();
  if (s.empty()) return;
  const long n0 = f.axis0().count, n1 = f.axis1().count;
  if (s.lo0 > 0 && s.hi0 < n0 - 1 && s.lo1 > 0 && s.hi1 < n1 - 1) return;
  auto nonzero = [&](long i, long j) { return !f.at(i, j).is_zero(); };
  bool clipped = false;
  for (long j = 0; j < n1 && !clipped; ++j) clipped = nonzero(0, j) || nonzero(n0 - 1, j);
  for (long i = 0; i < n0 && !clipped; ++i) clipped = nonzero(i, 0) || nonzero(i, n1 - 1);
  if (clipped)
    throw GrowthError("amplitude reached the lattice edge; re-run with larger extents");
}

// Index of a neighbour, or -1 when it falls off a hard wall.
inline long neighbour(long i, long delta, long n, bool periodic) {
  long k = i + delta;
  if (periodic) {
    if (k < 0) k += n;
    if (k >= n) k -= n;
    return k;
  }
  return (k < 0 || k >= n) ? -1 : k;
}

AmplitudeField blank_like(const AmplitudeField& f) {
  return f.coords() == Coords::X1X2
             ? AmplitudeField::x1x2(f.axis0(), f.axis1())
             : AmplitudeField::rho_sigma(f.axis0().origin, f.axis0().count, f.axis1().origin,
                                         f.axis1().count);
}

// Clears `out` (reusing its storage when the lattice matches).
void reset_like(const AmplitudeField& field, AmplitudeField& out) {
  if (out.coords() != field.coords() || out.axis0() != field.axis0() ||
      out.axis1() != field.axis1()) {
    out = blank_like(field);
    return;
  }
  const IndexBox& old = out.support();
  FieldWriter w(out);
  CoinVector* dst = w.data();
  if (!old.empty())
    for (long i = old.lo0; i <= old.hi0; ++i)
      std::fill(dst + out.offset(i, old.lo1), dst + out.offset(i, old.hi1) + 1, CoinVector{});
  w.set_support({});
}

template <typename Phase>
void stencil_step(const AmplitudeField& field, AmplitudeField& out, Boundary boundary,
                  Phase&& phase, long r_di, long r_dj, long d_di, long d_dj, long u_di, long u_dj,
                  long l_di, long l_dj) {
  const bool periodic = boundary == Boundary::Periodic;
  if (!periodic) check_edges(field);
  reset_like(field, out);

  const long n0 = field.axis0().count, n1 = field.axis1().count;
  FieldWriter w(out);
  CoinVector* dst = w.data();

  const IndexBox box = periodic ? IndexBox{0, n0 - 1, 0, n1 - 1} : field.support().grown(1, n0, n1);
  if (box.empty()) return;
  const CoinVector* src = field.data().data();
  auto at = [&](long i, long j) -> const CoinVector* {
    if (i < 0 || j < 0) return nullptr;
    return src + field.offset(i, j);
  };

#pragma omp parallel for schedule(static)
  for (long i = box.lo0; i <= box.hi0; ++i) {
    for (long j = box.lo1; j <= box.hi1; ++j) {
      const cplx g = phase(i, j);
      CoinVector v;
      if (const auto* s = at(neighbour(i, r_di, n0, periodic), neighbour(j, r_dj, n1, periodic)))
        v.c[0] = g * (s->c[0] + s->c[1] + s->c[2] + s->c[3]);
      if (const auto* s = at(neighbour(i, d_di, n0, periodic), neighbour(j, d_dj, n1, periodic)))
        v.c[1] = g * (s->c[0] - s->c[1] + s->c[2] - s->c[3]);
      if (const auto* s = at(neighbour(i, u_di, n0, periodic), neighbour(j, u_dj, n1, periodic)))
        v.c[2] = g * (s->c[0] + s->c[1] - s->c[2] - s->c[3]);
      if (const auto* s = at(neighbour(i, l_di, n0, periodic), neighbour(j, l_dj, n1, periodic)))
        v.c[3] = g * (s->c[0] - s->c[1] - s->c[2] + s->c[3]);
      dst[out.offset(i, j)] = v;
    }
  }
  w.set_support(box);
}

std::vector<cplx> phase_table(long rho_lo, long rho_hi, const WalkParams& params) {
  std::vector<cplx> t;
  t.reserve(static_cast<std::size_t>(rho_hi - rho_lo + 1));
  for (long r = rho_lo; r <= rho_hi; ++r) t.push_back(line_coupling(r, params.phi, params.phi0));
  return t;
}

}  // namespace

void step_x1x2_into(const AmplitudeField& field, AmplitudeField& out, const WalkParams& params,
                    Boundary boundary) {
  if (field.coords() != Coords::X1X2) throw ContractError("step_x1x2 expects an X1X2 field");
  const Axis& x1 = field.axis0();
  const Axis& x2 = field.axis1();
  const long rho_lo = x1.origin - x2.last();
  const std::vector<cplx> g = phase_table(rho_lo, x1.last() - x2.origin, params);
  // Destination (x1, x2) receives r from (x1-1, x2-1), d from (x1-1, x2+1),
  // u from (x1+1, x2-1) and l from (x1+1, x2+1).
  auto phase = [&](long i, long j) {
    return g[static_cast<std::size_t>(x1.at(i) - x2.at(j) - rho_lo)];
  };
  stencil_step(field, out, boundary, phase, -1, -1, -1, +1, +1, -1, +1, +1);
}

void step_rhosigma_into(const AmplitudeField& field, AmplitudeField& out,
                        const WalkParams& params, Boundary boundary) {
  if (field.coords() != Coords::RhoSigma)
    throw ContractError("step_rhosigma expects a RhoSigma field");
  const Axis& rho = field.axis0();
  std::vector<cplx> g;
  g.reserve(static_cast<std::size_t>(rho.count));
  for (long i = 0; i < rho.count; ++i) g.push_back(line_coupling(rho.at(i), params.phi, params.phi0));
  // Indices advance by one per +-2 in rho or sigma: r from sigma - 2,
  // d from rho - 2, u from rho + 2, l from sigma + 2.
  auto phase = [&](long i, long) { return g[static_cast<std::size_t>(i)]; };
  stencil_step(field, out, boundary, phase, 0, -1, -1, 0, +1, 0, 0, +1);
}

void step_into(const AmplitudeField& field, AmplitudeField& out, const WalkParams& params,
               Boundary boundary) {
  if (&field == &out) throw ContractError("step_into needs distinct source and destination");
  if (field.coords() == Coords::X1X2)
    step_x1x2_into(field, out, params, boundary);
  else
    step_rhosigma_into(field, out, params, boundary);
}

AmplitudeField step_x1x2(const AmplitudeField& field, const WalkParams& params,
                         Boundary boundary) {
  AmplitudeField out;
  step_x1x2_into(field, out, params, boundary);
  return out;
}

AmplitudeField step_rhosigma(const AmplitudeField& field, const WalkParams& params,
                             Boundary boundary) {
  AmplitudeField out;
  step_rhosigma_into(field, out, params, boundary);
  return out;
}

AmplitudeField step(const AmplitudeField& field, const WalkParams& params, Boundary boundary) {
  AmplitudeField out;
  step_into(field, out, params, boundary);
  return out;
}

ObservableSeries evolve(const InitialStateSpec& init, const WalkParams& params, int t_max,
                        const EvolveOptions& options) {
  if (t_max < 0) throw DomainError("t_max must be non-negative");
  if (options.stride < 1) throw DomainError("observer stride must be >= 1");
  auto listed = [](const std::vector<int>& v, int t) {
    return std::find(v.begin(), v.end(), t) != v.end();
  };

  ObservableSeries series;
  AmplitudeField field = build_initial(init, params, t_max);
  AmplitudeField scratch;
  for (int t = 0;; ++t) {
    const bool want_marg = listed(options.marginal_times, t);
    const bool want_joint = listed(options.joint_times, t);
    if (t % options.stride == 0 || want_marg || want_joint || listed(options.observe_times, t)) {
      ObservableRecord rec;
      rec.t = t;
      rec.m = moments(field);
      if (options.record_marginals || want_marg) rec.marginals = marginals(field);
      if (want_joint) rec.joint = joint_probability(field);
      series.records.push_back(std::move(rec));
      if (options.observer) {
        try {
          options.observer(t, field);
        } catch (const std::exception& e) {
          throw PartialResultsError("observer failed at t = " + std::to_string(t) + ": " + e.what(),
                                    std::move(series));
        }
      }
    }
    if (t == t_max) break;
    step_into(field, scratch, params);
    std::swap(field, scratch);
  }
  return series;
}

}  // namespace qw2
