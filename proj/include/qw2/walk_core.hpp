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

#ifndef QW2_WALK_CORE_HPP
#define QW2_WALK_CORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qw2 {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Reduces a phase to the half-open interval [-pi, pi).
double reduce_phase(double phase);

/// Two-walker coin state col(r, d, u, l) with r = u1u2, d = u1d2, u = d1u2,
/// l = d1d2. The component order is fixed and shared by every module.
struct CoinVector {
  enum Component : std::size_t { R = 0, D = 1, U = 2, L = 3 };

  std::array<cplx, 4> c{};

  CoinVector() = default;
  CoinVector(cplx r, cplx d, cplx u, cplx l) : c{r, d, u, l} {}

  /// Tensor product a (x) b of two single-walker coins (up, down).
  static CoinVector product(std::array<cplx, 2> first, std::array<cplx, 2> second);

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  cplx r() const { return c[R]; }
  cplx d() const { return c[D]; }
  cplx u() const { return c[U]; }
  cplx l() const { return c[L]; }

  double norm2() const;
  bool finite() const;
  bool is_zero() const { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0; }
  CoinVector normalized() const;

  friend bool operator==(const CoinVector&, const CoinVector&) = default;
};

/// Applies H1 (x) H1 with H1 the Hadamard matrix.
CoinVector coin_apply(const CoinVector& v);

/// Exchanges the d and u components (walker relabeling on the coin).
CoinVector swap_du(const CoinVector& v);

enum class Parity { Even, Odd };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);
Parity parity_of(long value);

/// Interaction and geometry parameters of the walk.
///
/// `ring_sites` is the number of relative-coordinate sites kept in the
/// parity sector; neighbouring sites differ by 2 in rho so the ring has
/// circumference 2 * ring_sites in rho units. The odd sector holds the odd
/// values in [-N, N), the even sector the even ones.
struct WalkParams {
  double phi = 0.0;
  double phi0 = 0.0;
  Parity parity = Parity::Odd;
  int ring_sites = 1;

  /// Odd sector: N = lc. Even sector: N = lc / 2 (lc must be even).
  static WalkParams from_ring_length(double phi, double phi0, Parity parity, int lc);

  double phi_reduced() const { return reduce_phase(phi); }
  double phi0_reduced() const { return reduce_phase(phi0); }

  /// Ring circumference measured in rho units.
  int ring_length() const { return parity == Parity::Odd ? ring_sites : 2 * ring_sites; }

  void validate() const;
};

/// Centered rho value of ring site `site` (0 <= site < ring_sites).
long ring_rho(const WalkParams& params, int site);

/// Ring site holding `rho`; rho is reduced modulo 2 * ring_sites first.
int ring_site(const WalkParams& params, long rho);

/// True when rho is one of the centered representatives of the sector.
bool in_ring_domain(const WalkParams& params, long rho);

/// Interaction coupling g_rho = exp(i phi / |rho|) / 2, with
/// g_0 = exp(i phi0) / 2. `rho` must be a centered ring representative.
cplx coupling(long rho, const WalkParams& params);

/// Coupling on the unbounded line (no ring domain check); used by the
/// lattice steppers where rho = x1 - x2 takes any integer value.
cplx line_coupling(long rho, double phi, double phi0);

// ---------------------------------------------------------------------------
// Amplitude fields
// ---------------------------------------------------------------------------

enum class Coords { X1X2, RhoSigma };

/// Regular 1-D lattice axis: values origin, origin + stride, ...
struct Axis {
  long origin = 0;
  long count = 0;
  long stride = 1;

  long at(long index) const { return origin + stride * index; }
  long last() const { return at(count - 1); }
  bool contains(long value) const;
  long index_of(long value) const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Inclusive index box [lo0, hi0] x [lo1, hi1]; empty when lo0 > hi0.
struct IndexBox {
  long lo0 = 0, hi0 = -1, lo1 = 0, hi1 = -1;

  bool empty() const { return lo0 > hi0 || lo1 > hi1; }
  void include(long i, long j);
  IndexBox grown(long by, long n0, long n1) const;

  friend bool operator==(const IndexBox&, const IndexBox&) = default;
};

/// Walker state: one CoinVector per lattice site.
///
/// X1X2 fields cover a full rectangle of (x1, x2) with unit stride. RhoSigma
/// fields store a single parity sublattice: rho and sigma both advance by 2,
/// and rho = sigma (mod 2) always, so the opposite sublattice is never
/// materialised and is identically zero.
class AmplitudeField {
 public:
  AmplitudeField() = default;

  static AmplitudeField x1x2(Axis x1, Axis x2);
  /// rho_min and sigma_min must share parity.
  static AmplitudeField rho_sigma(long rho_min, long rho_count, long sigma_min, long sigma_count);

  Coords coords() const { return coords_; }
  const Axis& axis0() const { return axis0_; }
  const Axis& axis1() const { return axis1_; }
  /// Sector of a RhoSigma field.
  Parity parity() const { return parity_of(axis0_.origin); }

  std::size_t size() const { return data_.size(); }
  std::span<const CoinVector> data() const { return data_; }

  const CoinVector& at(long i, long j) const { return data_[offset(i, j)]; }
  /// Coin at lattice coordinates; zero outside the stored lattice.
  CoinVector value(long a, long b) const;
  /// Throws DomainError when (a, b) is not a stored site.
  void set(long a, long b, const CoinVector& v);
  void set_index(long i, long j, const CoinVector& v);

  /// Conservative bounding box (in indices) of all nonzero sites.
  const IndexBox& support() const { return support_; }
  /// Recomputes the exact support by scanning.
  void shrink_support();

  double norm2() const;
  void scale(cplx factor);

  std::size_t offset(long i, long j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(axis1_.count) +
           static_cast<std::size_t>(j);
  }

 private:
  friend class FieldWriter;

  Coords coords_ = Coords::X1X2;
  Axis axis0_, axis1_;
  std::vector<CoinVector> data_;
  IndexBox support_;
};

/// Write access for steppers that fill a fresh field index by index.
class FieldWriter {
 public:
  explicit FieldWriter(AmplitudeField& f) : f_(f) {}
  CoinVector* data() { return f_.data_.data(); }
  void set_support(const IndexBox& box) { f_.support_ = box; }

 private:
  AmplitudeField& f_;
};

/// Particle exchange 1 <-> 2. RhoSigma: rho -> -rho with (R,D,U,L) ->
/// (R,U,D,L). X1X2: the position axes are swapped together with d <-> u.
AmplitudeField exchange(const AmplitudeField& field);

/// Regroups the X1X2 sites with x1 - x2 of the given parity onto a RhoSigma
/// field. Other sites are dropped.
AmplitudeField to_rho_sigma(const AmplitudeField& field, Parity parity);
AmplitudeField to_x1x2(const AmplitudeField& field);

}  // namespace qw2

#endif  // QW2_WALK_CORE_HPP
