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

#ifndef QW2_OBSERVABLES_HPP
#define QW2_OBSERVABLES_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "qw2/walk_core.hpp"

namespace qw2 {

/// Neumaier compensated accumulator. Summation order is the call order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Probability on a 1-D lattice with values axis.at(i).
struct Distribution1D {
  Axis axis;
  std::vector<double> p;

  double total() const;
  double at(long value) const;
};

struct Marginals {
  Distribution1D rho;
  Distribution1D sigma;
};

/// P on the field's own lattice, same axes as the field.
struct ProbabilityGrid {
  Coords coords = Coords::X1X2;
  Axis axis0, axis1;
  std::vector<double> p;

  double at_index(long i, long j) const {
    return p[static_cast<std::size_t>(i * axis1.count + j)];
  }
  double total() const;
};

ProbabilityGrid joint_probability(const AmplitudeField& field);

/// P_rho = sum_sigma P and P_sigma = sum_rho P.
Marginals marginals(const AmplitudeField& field);

/// Signed first moment sum_rho rho * P_rho.
double mean_distance(const AmplitudeField& field);

/// Raw moments of a (normalized) field; means are sum x P, variances
/// sum x^2 P - mean^2.
struct Moments {
  double norm = 0.0;
  double mean_rho = 0.0;
  double mean_sigma = 0.0;
  double var_rho = 0.0;
  double var_sigma = 0.0;
  double mean_x1 = 0.0;
  double mean_x2 = 0.0;
};

Moments moments(const AmplitudeField& field);

struct ObservableRecord {
  int t = 0;
  Moments m;
  std::optional<Marginals> marginals;
  std::optional<ProbabilityGrid> joint;
};

struct ObservableSeries {
  std::vector<ObservableRecord> records;
};

}  // namespace qw2

#endif  // QW2_OBSERVABLES_HPP
