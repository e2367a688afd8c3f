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

#ifndef QW2_EVOLUTION_HPP
#define QW2_EVOLUTION_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qw2/observables.hpp"
#include "qw2/walk_core.hpp"

namespace qw2 {

/// Lattice edge treatment for the steppers. HardWall refuses to step a
/// field whose amplitude touches the edge; Periodic wraps the shift on a
/// torus (the interaction phase still uses the literal x1 - x2).
enum class Boundary { HardWall, Periodic };

/// Single site, either (x1, x2) or (rho, sigma).
struct PointState {
  Coords coords = Coords::X1X2;
  long a = 0;
  long b = 0;
  CoinVector coin{1.0, 0.0, 0.0, 0.0};
};

struct RhoCoin {
  long rho = 0;
  CoinVector coin;
};

/// A fixed rho-profile repeated with uniform weight on every other sigma
/// site in [sigma_min, sigma_max].
struct SigmaSegment {
  std::vector<RhoCoin> profile;
  long sigma_min = 0;
  long sigma_max = 0;

  /// Same coin at a single rho.
  static SigmaSegment uniform(long rho, const CoinVector& coin, long sigma_min, long sigma_max);
  std::vector<long> sigma_sites() const;
};

/// Product of single-walker Gaussians
/// exp(-(x - x0)^2 / (4 width^2)) exp(i k x), times a common coin.
/// `width` is the standard deviation of the position probability.
struct GaussianPair {
  double x1_center = 0.0;
  double x2_center = 0.0;
  double width = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  CoinVector coin{1.0, 0.0, 0.0, 0.0};

  /// Half-width (sites) beyond which the amplitude is below ~1e-17 and
  /// is not stored.
  long cutoff() const;
};

using InitialStateSpec = std::variant<PointState, SigmaSegment, GaussianPair>;

/// Coordinates an initial state is built in.
Coords natural_coords(const InitialStateSpec& init);

/// Normalized field with room for `t_max` steps under a hard wall
/// (support + t_max + 4 margin on every side).
AmplitudeField build_initial(const InitialStateSpec& init, const WalkParams& params, int t_max = 0);

/// Normalized field on explicit extents. The support must lie strictly
/// inside them, otherwise DomainError.
AmplitudeField build_initial_on(const InitialStateSpec& init, const WalkParams& params,
                                const Axis& axis0, const Axis& axis1);

/// One step of the (x1, x2) map: coin, shift, then the interaction phase
/// of the destination site.
AmplitudeField step_x1x2(const AmplitudeField& field, const WalkParams& params,
                         Boundary boundary = Boundary::HardWall);

/// One step of the (rho, sigma) map on the field's parity sublattice.
AmplitudeField step_rhosigma(const AmplitudeField& field, const WalkParams& params,
                             Boundary boundary = Boundary::HardWall);

/// Dispatches on the field's coordinates.
AmplitudeField step(const AmplitudeField& field, const WalkParams& params,
                    Boundary boundary = Boundary::HardWall);

/// Double-buffered step: writes into `out`, reusing its storage when its
/// lattice matches the source.
void step_into(const AmplitudeField& field, AmplitudeField& out, const WalkParams& params,
               Boundary boundary = Boundary::HardWall);

struct EvolveOptions {
  int stride = 1;
  bool record_marginals = false;
  std::vector<int> marginal_times;
  std::vector<int> joint_times;
  /// Extra times to record (and hand to the observer) off the stride.
  std::vector<int> observe_times;
  /// Called with every recorded field (t = 0 included).
  std::function<void(int, const AmplitudeField&)> observer;
};

/// Observer or stepper failure after some records were collected.
class PartialResultsError : public std::runtime_error {
 public:
  PartialResultsError(const std::string& what, ObservableSeries partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ObservableSeries& partial() const { return partial_; }

 private:
  ObservableSeries partial_;
};

ObservableSeries evolve(const InitialStateSpec& init, const WalkParams& params, int t_max,
                        const EvolveOptions& options = {});

}  // namespace qw2

#endif  // QW2_EVOLUTION_HPP
