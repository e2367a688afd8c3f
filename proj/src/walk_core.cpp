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

#include "qw2/walk_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qw2/errors.hpp"

namespace qw2 {

double reduce_phase(double phase) {
  constexpr double two_pi = 2.0 * kPi;
  double r = phase - two_pi * std::floor((phase + kPi) / two_pi);
  if (r >= kPi) r -= two_pi;
  if (r < -kPi) r += two_pi;
  return r;
}

// --- CoinVector -------------------------------------------------------------

CoinVector CoinVector::product(std::array<cplx, 2> first, std::array<cplx, 2> second) {
  return {first[0] * second[0], first[0] * second[1], first[1] * second[0],
          first[1] * second[1]};
}

double CoinVector::norm2() const {
  return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]) + std::norm(c[3]);
}

bool CoinVector::finite() const {
  return std::all_of(c.begin(), c.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CoinVector CoinVector::normalized() const {
  const double n = std::sqrt(norm2());
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite coin");
  CoinVector out = *this;
  for (auto& z : out.c) z /= n;
  return out;
}

CoinVector coin_apply(const CoinVector& v) {
  const cplx r = v.c[0], d = v.c[1], u = v.c[2], l = v.c[3];
  return {0.5 * (r + d + u + l), 0.5 * (r - d + u - l), 0.5 * (r + d - u - l),
          0.5 * (r - d - u + l)};
}

CoinVector swap_du(const CoinVector& v) { return {v.c[0], v.c[2], v.c[1], v.c[3]}; }

// --- Parity / params ---------------------------------------------------------

std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

Parity parity_from_string(const std::string& s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  throw DomainError("parity must be 'odd' or 'even', got '" + s + "'");
}

Parity parity_of(long value) { return (value % 2 == 0) ? Parity::Even : Parity::Odd; }

WalkParams WalkParams::from_ring_length(double phi, double phi0, Parity parity, int lc) {
  if (lc <= 0) throw DomainError("ring length must be positive");
  WalkParams p;
  p.phi = phi;
  p.phi0 = phi0;
  p.parity = parity;
  if (parity == Parity::Even) {
    if (lc % 2 != 0) throw DomainError("even sector needs an even ring length");
    p.ring_sites = lc / 2;
  } else {
    p.ring_sites = lc;
  }
  return p;
}

void WalkParams::validate() const {
  if (ring_sites < 1) throw DomainError("ring_sites must be >= 1");
  if (!std::isfinite(phi) || !std::isfinite(phi0)) throw DomainError("phases must be finite");
}

namespace {

long ring_lowest(const WalkParams& params) {
  const long n = params.ring_sites;
  const bool want_odd = params.parity == Parity::Odd;
  const bool minus_n_odd = (n % 2) != 0;
  return (want_odd == minus_n_odd) ? -n : -n + 1;
}

}  // namespace

long ring_rho(const WalkParams& params, int site) {
  if (site < 0 || site >= params.ring_sites) throw DomainError("ring site out of range");
  return ring_lowest(params) + 2L * site;
}

bool in_ring_domain(const WalkParams& params, long rho) {
  if (parity_of(rho) != params.parity) return false;
  const long lo = ring_lowest(params);
  return rho >= lo && rho <= lo + 2L * (params.ring_sites - 1);
}

int ring_site(const WalkParams& params, long rho) {
  if (parity_of(rho) != params.parity) throw DomainError("rho has the wrong parity for this sector");
  const long lo = ring_lowest(params);
  const long circ = 2L * params.ring_sites;
  long shifted = (rho - lo) % circ;
  if (shifted < 0) shifted += circ;
  return static_cast<int>(shifted / 2);
}

cplx line_coupling(long rho, double phi, double phi0) {
  const double phase = rho == 0 ? phi0 : phi / static_cast<double>(std::labs(rho));
  return 0.5 * std::polar(1.0, phase);
}

cplx coupling(long rho, const WalkParams& params) {
  if (rho == 0 && params.parity == Parity::Odd)
    throw ContractError("coupling at rho = 0 is undefined in the odd sector");
  if (!in_ring_domain(params, rho))
    throw DomainError("rho = " + std::to_string(rho) + " is outside the ring domain");
  return line_coupling(rho, params.phi, params.phi0);
}

// --- Axis / IndexBox ---------------------------------------------------------

bool Axis::contains(long value) const {
  const long diff = value - origin;
  if (diff % stride != 0) return false;
  const long idx = diff / stride;
  return idx >= 0 && idx < count;
}

long Axis::index_of(long value) const {
  if (!contains(value)) throw DomainError("coordinate " + std::to_string(value) + " not on axis");
  return (value - origin) / stride;
}

void IndexBox::include(long i, long j) {
  if (empty()) {
    lo0 = hi0 = i;
    lo1 = hi1 = j;
    return;
  }
  lo0 = std::min(lo0, i);
  hi0 = std::max(hi0, i);
  lo1 = std::min(lo1, j);
  hi1 = std::max(hi1, j);
}

IndexBox IndexBox::grown(long by, long n0, long n1) const {
  if (empty()) return *this;
  return {std::max(0L, lo0 - by), std::min(n0 - 1, hi0 + by), std::max(0L, lo1 - by),
          std::min(n1 - 1, hi1 + by)};
}

// --- AmplitudeField ----------------------------------------------------------

AmplitudeField AmplitudeField::x1x2(Axis x1, Axis x2) {
  if (x1.count <= 0 || x2.count <= 0) throw DomainError("field extents must be positive");
  x1.stride = 1;
  x2.stride = 1;
  AmplitudeField f;
  f.coords_ = Coords::X1X2;
  f.axis0_ = x1;
  f.axis1_ = x2;
  f.data_.assign(static_cast<std::size_t>(x1.count * x2.count), CoinVector{});
  return f;
}

AmplitudeField AmplitudeField::rho_sigma(long rho_min, long rho_count, long sigma_min,
                                         long sigma_count) {
  if (rho_count <= 0 || sigma_count <= 0) throw DomainError("field extents must be positive");
  if (parity_of(rho_min) != parity_of(sigma_min))
    throw DomainError("rho and sigma origins must share parity");
  AmplitudeField f;
  f.coords_ = Coords::RhoSigma;
  f.axis0_ = {rho_min, rho_count, 2};
  f.axis1_ = {sigma_min, sigma_count, 2};
  f.data_.assign(static_cast<std::size_t>(rho_count * sigma_count), CoinVector{});
  return f;
}

CoinVector AmplitudeField::value(long a, long b) const {
  if (!axis0_.contains(a) || !axis1_.contains(b)) return {};
  return data_[offset(axis0_.index_of(a), axis1_.index_of(b))];
}

void AmplitudeField::set(long a, long b, const CoinVector& v) {
  if (!axis0_.contains(a) || !axis1_.contains(b))
    throw DomainError("site (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") is not on this field's lattice");
  set_index(axis0_.index_of(a), axis1_.index_of(b), v);
}

void AmplitudeField::set_index(long i, long j, const CoinVector& v) {
  if (!v.finite()) throw DomainError("non-finite amplitude");
  data_[offset(i, j)] = v;
  if (!v.is_zero()) support_.include(i, j);
}

void AmplitudeField::shrink_support() {
  support_ = {};
  for (long i = 0; i < axis0_.count; ++i)
    for (long j = 0; j < axis1_.count; ++j)
      if (!data_[offset(i, j)].is_zero()) support_.include(i, j);
}

double AmplitudeField::norm2() const {
  // Neumaier summation in storage order.
  double sum = 0.0, comp = 0.0;
  for (const auto& v : data_) {
    const double x = v.norm2();
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void AmplitudeField::scale(cplx factor) {
  for (auto& v : data_)
    for (auto& z : v.c) z *= factor;
  if (factor == 0.0) support_ = {};
}

AmplitudeField exchange(const AmplitudeField& field) {
  const Axis& a0 = field.axis0();
  const Axis& a1 = field.axis1();
  AmplitudeField out;
  const IndexBox& s = field.support();
  IndexBox box;
  if (field.coords() == Coords::RhoSigma) {
    out = AmplitudeField::rho_sigma(-a0.last(), a0.count, a1.origin, a1.count);
    FieldWriter w(out);
    CoinVector* dst = w.data();
    for (long i = 0; i < a0.count; ++i)
      for (long j = 0; j < a1.count; ++j)
        dst[out.offset(i, j)] = swap_du(field.at(a0.count - 1 - i, j));
    if (!s.empty()) box = {a0.count - 1 - s.hi0, a0.count - 1 - s.lo0, s.lo1, s.hi1};
    w.set_support(box);
  } else {
    out = AmplitudeField::x1x2(a1, a0);
    FieldWriter w(out);
    CoinVector* dst = w.data();
    for (long i = 0; i < a1.count; ++i)
      for (long j = 0; j < a0.count; ++j) dst[out.offset(i, j)] = swap_du(field.at(j, i));
    if (!s.empty()) box = {s.lo1, s.hi1, s.lo0, s.hi0};
    w.set_support(box);
  }
  return out;
}

namespace {

long round_up_to_parity(long v, Parity p) { return parity_of(v) == p ? v : v + 1; }

}  // namespace

AmplitudeField to_rho_sigma(const AmplitudeField& field, Parity parity) {
  if (field.coords() != Coords::X1X2) throw ContractError("to_rho_sigma expects an X1X2 field");
  const Axis& x1 = field.axis0();
  const Axis& x2 = field.axis1();
  const long rho_lo = round_up_to_parity(x1.origin - x2.last(), parity);
  const long rho_hi = x1.last() - x2.origin;
  const long sig_lo = round_up_to_parity(x1.origin + x2.origin, parity);
  const long sig_hi = x1.last() + x2.last();
  if (rho_lo > rho_hi || sig_lo > sig_hi) throw DomainError("field has no sites of this parity");
  AmplitudeField out = AmplitudeField::rho_sigma(rho_lo, (rho_hi - rho_lo) / 2 + 1, sig_lo,
                                                 (sig_hi - sig_lo) / 2 + 1);
  for (long i = 0; i < x1.count; ++i) {
    for (long j = 0; j < x2.count; ++j) {
      const long a = x1.at(i), b = x2.at(j);
      if (parity_of(a - b) != parity) continue;
      const CoinVector& v = field.at(i, j);
      if (!v.is_zero()) out.set(a - b, a + b, v);
    }
  }
  return out;
}

AmplitudeField to_x1x2(const AmplitudeField& field) {
  if (field.coords() != Coords::RhoSigma) throw ContractError("to_x1x2 expects a RhoSigma field");
  const Axis& rho = field.axis0();
  const Axis& sig = field.axis1();
  const long x1_lo = (sig.origin + rho.origin) / 2, x1_hi = (sig.last() + rho.last()) / 2;
  const long x2_lo = (sig.origin - rho.last()) / 2, x2_hi = (sig.last() - rho.origin) / 2;
  AmplitudeField out =
      AmplitudeField::x1x2({x1_lo, x1_hi - x1_lo + 1, 1}, {x2_lo, x2_hi - x2_lo + 1, 1});
  for (long i = 0; i < rho.count; ++i) {
    for (long j = 0; j < sig.count; ++j) {
      const CoinVector& v = field.at(i, j);
      if (v.is_zero()) continue;
      const long r = rho.at(i), s = sig.at(j);
      out.set((s + r) / 2, (s - r) / 2, v);
    }
  }
  return out;
}

}  // namespace qw2
