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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "qw2/errors.hpp"
#include "qw2/walk_core.hpp"
#include "test_support.hpp"

namespace qw2 {
namespace {

using testing::random_coin;

WalkParams odd(double phi, int n = 191) { return {phi, 0.0, Parity::Odd, n}; }
WalkParams even(double phi, double phi0, int n = 95) { return {phi, phi0, Parity::Even, n}; }

double coin_distance(const CoinVector& a, const CoinVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(Coupling, UnitDistanceAtPhiOne) {
  const cplx g = coupling(1, odd(1.0));
  EXPECT_NEAR(g.real(), 0.5 * std::cos(1.0), 1e-15);
  EXPECT_NEAR(g.imag(), 0.5 * std::sin(1.0), 1e-15);
  EXPECT_NEAR(g.real(), 0.27015, 5e-6);
  EXPECT_NEAR(g.imag(), 0.42074, 5e-6);
}

TEST(Coupling, FreeWalkIsOneHalf) {
  const cplx g = coupling(7, odd(0.0));
  EXPECT_EQ(g, cplx(0.5, 0.0));
}

TEST(Coupling, ContactPhase) {
  const cplx g = coupling(0, even(1.0, kPi / 2));
  EXPECT_NEAR(g.real(), 0.0, 1e-16);
  EXPECT_NEAR(g.imag(), 0.5, 1e-16);
}

TEST(Coupling, DependsOnDistanceOnly) {
  EXPECT_EQ(coupling(-3, odd(1.0)), coupling(3, odd(1.0)));
  EXPECT_NEAR(std::arg(coupling(-3, odd(1.0))), 1.0 / 3.0, 1e-15);
}

TEST(Coupling, ModulusAndConjugation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double phi = u(rng);
    const double phi0 = u(rng);
    for (long rho = -95; rho < 95; ++rho) {
      const WalkParams p = parity_of(rho) == Parity::Odd ? odd(phi) : even(phi, phi0);
      const cplx g = coupling(rho, p);
      EXPECT_NEAR(std::abs(g), 0.5, 1e-16);
      if (rho != 0) {
        WalkParams q = p;
        q.phi = -phi;
        EXPECT_EQ(coupling(rho, q), std::conj(g));
      }
    }
  }
}

TEST(Coupling, DomainErrors) {
  EXPECT_THROW(coupling(0, odd(1.0)), ContractError);
  EXPECT_THROW(coupling(191, odd(1.0)), DomainError);
  EXPECT_THROW(coupling(2, odd(1.0)), DomainError);
  EXPECT_THROW(coupling(-96, even(1.0, 0.0)), DomainError);
  EXPECT_NO_THROW(coupling(-94, even(1.0, 0.0)));
  EXPECT_NO_THROW(coupling(-191, odd(1.0)));
}

TEST(Coin, FirstColumn) {
  const CoinVector out = coin_apply(CoinVector{1.0, 0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[i], cplx(0.5));
}

TEST(Coin, InverseOfFirstColumn) {
  const CoinVector out = coin_apply(CoinVector{0.5, 0.5, 0.5, 0.5});
  EXPECT_LT(coin_distance(out, CoinVector{1.0, 0.0, 0.0, 0.0}), 1e-16);
}

TEST(Coin, InvolutiveIsometry) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    CoinVector v = random_coin(rng);
    v.c[2] *= 3.7;
    const CoinVector hv = coin_apply(v);
    EXPECT_NEAR(std::sqrt(hv.norm2()), std::sqrt(v.norm2()), 1e-15);
    EXPECT_LT(coin_distance(coin_apply(hv), v), 1e-15);
  }
}

TEST(Coin, TensorProductOrdering) {
  const CoinVector v = CoinVector::product({0.0, 1.0}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  EXPECT_EQ(v[CoinVector::R], cplx(0.0));
  EXPECT_EQ(v[CoinVector::D], cplx(0.0));
  EXPECT_NEAR(v[CoinVector::U].real(), 1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(v[CoinVector::L].real(), 1.0 / std::sqrt(2.0), 1e-16);
}

TEST(Params, ReducedPhasesAndRing) {
  const WalkParams p = WalkParams::from_ring_length(2 * kPi + 0.5, -kPi, Parity::Even, 190);
  EXPECT_EQ(p.ring_sites, 95);
  EXPECT_EQ(p.ring_length(), 190);
  EXPECT_NEAR(p.phi_reduced(), 0.5, 1e-12);
  EXPECT_NEAR(p.phi0_reduced(), -kPi, 1e-15);
  EXPECT_EQ(WalkParams::from_ring_length(1.0, 0.0, Parity::Odd, 191).ring_sites, 191);
  EXPECT_THROW(WalkParams::from_ring_length(1.0, 0.0, Parity::Even, 191), DomainError);
  WalkParams bad = odd(std::numeric_limits<double>::infinity());
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Ring, SitesCoverTheSector) {
  for (const WalkParams& p : {odd(1.0, 191), odd(1.0, 7), even(1.0, 0.0, 95), even(1.0, 0.0, 1)}) {
    std::set<long> seen;
    for (int j = 0; j < p.ring_sites; ++j) {
      const long rho = ring_rho(p, j);
      EXPECT_EQ(parity_of(rho), p.parity);
      EXPECT_TRUE(in_ring_domain(p, rho));
      EXPECT_EQ(ring_site(p, rho), j);
      EXPECT_EQ(ring_site(p, rho + 2 * p.ring_sites), j);
      if (j > 0) {
        EXPECT_EQ(rho, ring_rho(p, j - 1) + 2);
      }
      seen.insert(rho);
    }
    EXPECT_EQ(static_cast<int>(seen.size()), p.ring_sites);
  }
}

AmplitudeField single(long rho, long sigma, const CoinVector& c) {
  AmplitudeField f = AmplitudeField::rho_sigma(rho < 0 ? rho - 4 : -rho - 4, std::labs(rho) + 5,
                                               sigma - 4, 5);
  f.set(rho, sigma, c);
  return f;
}

TEST(Exchange, MirrorsRho) {
  const AmplitudeField f = single(3, 1, CoinVector{1.0, 0.0, 0.0, 0.0});
  const AmplitudeField g = exchange(f);
  EXPECT_EQ(g.value(-3, 1)[CoinVector::R], cplx(1.0));
  EXPECT_NEAR(g.norm2(), 1.0, 0.0);
}

TEST(Exchange, SwapsDownAndUp) {
  const AmplitudeField f = single(1, 3, CoinVector{0.0, 1.0, 0.0, 0.0});
  const AmplitudeField g = exchange(f);
  const CoinVector c = g.value(-1, 3);
  EXPECT_EQ(c[CoinVector::U], cplx(1.0));
  EXPECT_EQ(c[CoinVector::D], cplx(0.0));
  EXPECT_EQ(g.norm2(), 1.0);
}

AmplitudeField random_rho_sigma(std::mt19937_64& rng, long half, long sigma0) {
  AmplitudeField f = AmplitudeField::rho_sigma(-half, half + 1, sigma0, 9);
  for (long i = 0; i < f.axis0().count; ++i)
    for (long j = 0; j < f.axis1().count; ++j) f.set_index(i, j, random_coin(rng));
  return f;
}

TEST(Exchange, InvolutiveIsometry) {
  std::mt19937_64 rng(3);
  for (long half : {6L, 7L}) {
    const AmplitudeField f = random_rho_sigma(rng, half, half % 2 == 0 ? -8 : -9);
    const AmplitudeField g = exchange(exchange(f));
    EXPECT_NEAR(exchange(f).norm2(), f.norm2(), 1e-13);
    for (long i = 0; i < f.axis0().count; ++i)
      for (long j = 0; j < f.axis1().count; ++j)
        EXPECT_EQ(coin_distance(g.value(f.axis0().at(i), f.axis1().at(j)), f.at(i, j)), 0.0);
  }
}

TEST(Exchange, SymmetricFieldIsFixed) {
  std::mt19937_64 rng(5);
  AmplitudeField f = AmplitudeField::rho_sigma(-5, 6, -5, 6);
  for (long rho = -5; rho <= 5; rho += 2)
    for (long s = -5; s <= 5; s += 2) {
      if (rho > 0) continue;
      const CoinVector c = random_coin(rng);
      f.set(rho, s, c);
      f.set(-rho, s, swap_du(c));
    }
  const AmplitudeField g = exchange(f);
  for (long rho = -5; rho <= 5; rho += 2)
    for (long s = -5; s <= 5; s += 2) EXPECT_LT(coin_distance(g.value(rho, s), f.value(rho, s)), 1e-16);
}

TEST(Exchange, CommutesWithCoinUpToSwap) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const CoinVector v = random_coin(rng);
    EXPECT_LT(coin_distance(coin_apply(swap_du(v)), swap_du(coin_apply(v))), 1e-15);
  }
  const AmplitudeField f = random_rho_sigma(rng, 5, -9);
  const AmplitudeField e = exchange(f);
  for (long i = 0; i < f.axis0().count; ++i)
    for (long j = 0; j < f.axis1().count; ++j) {
      const long rho = f.axis0().at(i);
      const long sigma = f.axis1().at(j);
      EXPECT_LT(coin_distance(coin_apply(e.value(-rho, sigma)), swap_du(coin_apply(f.at(i, j)))), 1e-15);
    }
}

TEST(Exchange, X1X2SwapsAxes) {
  AmplitudeField f = AmplitudeField::x1x2({-3, 7, 1}, {0, 4, 1});
  f.set(2, 1, CoinVector{0.1, 0.2, 0.3, 0.4});
  const AmplitudeField g = exchange(f);
  const CoinVector c = g.value(1, 2);
  EXPECT_EQ(c[CoinVector::D], cplx(0.3));
  EXPECT_EQ(c[CoinVector::U], cplx(0.2));
  EXPECT_EQ(g.axis0(), f.axis1());
}

TEST(Field, SetOutsideLatticeThrows) {
  AmplitudeField f = AmplitudeField::rho_sigma(-3, 4, -3, 4);
  EXPECT_THROW(f.set(-2, -3, CoinVector{1.0, 0.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(f.set(7, -3, CoinVector{1.0, 0.0, 0.0, 0.0}), DomainError);
  EXPECT_TRUE(f.value(-2, -3).is_zero());
  EXPECT_THROW(AmplitudeField::rho_sigma(-3, 4, -2, 4), DomainError);
}

TEST(Field, CoordinateConversionRoundTrip) {
  std::mt19937_64 rng(13);
  const AmplitudeField xy = testing::random_x1x2(rng, {-4, 9, 1}, {-2, 8, 1}, 0);
  const AmplitudeField odd_part = to_rho_sigma(xy, Parity::Odd);
  const AmplitudeField even_part = to_rho_sigma(xy, Parity::Even);
  EXPECT_NEAR(odd_part.norm2() + even_part.norm2(), 1.0, 1e-14);
  const AmplitudeField back = to_x1x2(odd_part);
  for (long x1 = -4; x1 <= 4; ++x1)
    for (long x2 = -2; x2 <= 5; ++x2) {
      const CoinVector expect = parity_of(x1 - x2) == Parity::Odd ? xy.value(x1, x2) : CoinVector{};
      EXPECT_EQ(coin_distance(back.value(x1, x2), expect), 0.0);
      EXPECT_EQ(coin_distance(odd_part.value(x1 - x2, x1 + x2),
                              parity_of(x1 - x2) == Parity::Odd ? xy.value(x1, x2) : CoinVector{}),
                0.0);
    }
}

}  // namespace
}  // namespace qw2
