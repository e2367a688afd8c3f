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

#include "qw2/observables.hpp"

namespace qw2 {

double Distribution1D::total() const {
  CompensatedSum s;
  for (double x : p) s.add(x);
  return s.value();
}

double Distribution1D::at(long value) const {
  if (!axis.contains(value)) return 0.0;
  return p[static_cast<std::size_t>(axis.index_of(value))];
}

double ProbabilityGrid::total() const {
  CompensatedSum s;
  for (double x : p) s.add(x);
  return s.value();
}

ProbabilityGrid joint_probability(const AmplitudeField& field) {
  ProbabilityGrid g;
  g.coords = field.coords();
  g.axis0 = field.axis0();
  g.axis1 = field.axis1();
  g.p.resize(field.size());
  const auto data = field.data();
  for (std::size_t n = 0; n < data.size(); ++n) g.p[n] = data[n].norm2();
  return g;
}

namespace {

// Relative and centre coordinate axes spanned by a field.
struct DerivedAxes {
  Axis rho, sigma;
};

DerivedAxes derived_axes(const AmplitudeField& f) {
  if (f.coords() == Coords::RhoSigma) return {f.axis0(), f.axis1()};
  const Axis& x1 = f.axis0();
  const Axis& x2 = f.axis1();
  const long rho_lo = x1.origin - x2.last(), rho_hi = x1.last() - x2.origin;
  const long sig_lo = x1.origin + x2.origin, sig_hi = x1.last() + x2.last();
  return {{rho_lo, rho_hi - rho_lo + 1, 1}, {sig_lo, sig_hi - sig_lo + 1, 1}};
}

}  // namespace

Marginals marginals(const AmplitudeField& field) {
  const DerivedAxes ax = derived_axes(field);
  std::vector<CompensatedSum> rho_acc(static_cast<std::size_t>(ax.rho.count));
  std::vector<CompensatedSum> sig_acc(static_cast<std::size_t>(ax.sigma.count));
  const long n0 = field.axis0().count, n1 = field.axis1().count;
  const bool rs = field.coords() == Coords::RhoSigma;
  for (long i = 0; i < n0; ++i) {
    for (long j = 0; j < n1; ++j) {
      const double p = field.at(i, j).norm2();
      if (p == 0.0) continue;
      long ri, si;
      if (rs) {
        ri = i;
        si = j;
      } else {
        const long a = field.axis0().at(i), b = field.axis1().at(j);
        ri = (a - b) - ax.rho.origin;
        si = (a + b) - ax.sigma.origin;
      }
      rho_acc[static_cast<std::size_t>(ri)].add(p);
      sig_acc[static_cast<std::size_t>(si)].add(p);
    }
  }
  Marginals m{{ax.rho, {}}, {ax.sigma, {}}};
  m.rho.p.reserve(rho_acc.size());
  for (const auto& s : rho_acc) m.rho.p.push_back(s.value());
  m.sigma.p.reserve(sig_acc.size());
  for (const auto& s : sig_acc) m.sigma.p.push_back(s.value());
  return m;
}

Moments moments(const AmplitudeField& field) {
  CompensatedSum norm, r1, r2, s1, s2;
  const long n0 = field.axis0().count, n1 = field.axis1().count;
  const bool rs = field.coords() == Coords::RhoSigma;
  for (long i = 0; i < n0; ++i) {
    for (long j = 0; j < n1; ++j) {
      const double p = field.at(i, j).norm2();
      if (p == 0.0) continue;
      const long a = field.axis0().at(i), b = field.axis1().at(j);
      const double rho = rs ? static_cast<double>(a) : static_cast<double>(a - b);
      const double sig = rs ? static_cast<double>(b) : static_cast<double>(a + b);
      norm.add(p);
      r1.add(rho * p);
      r2.add(rho * rho * p);
      s1.add(sig * p);
      s2.add(sig * sig * p);
    }
  }
  Moments m;
  m.norm = norm.value();
  m.mean_rho = r1.value();
  m.mean_sigma = s1.value();
  m.var_rho = r2.value() - m.mean_rho * m.mean_rho;
  m.var_sigma = s2.value() - m.mean_sigma * m.mean_sigma;
  m.mean_x1 = 0.5 * (m.mean_sigma + m.mean_rho);
  m.mean_x2 = 0.5 * (m.mean_sigma - m.mean_rho);
  return m;
}

double mean_distance(const AmplitudeField& field) { return moments(field).mean_rho; }

}  // namespace qw2
