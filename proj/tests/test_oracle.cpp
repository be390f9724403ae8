#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "isingq/oracle.hpp"

using namespace isingq;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Sum of |Boltzmann weights|. When the complex weights cancel almost
// completely, rounding error scales with this rather than with |Z|.
double modulus_scale(const IsingInstance& x) {
  IsingInstance y = x;
  for (int r = 0; r < x.n(); ++r)
    for (int c = 0; c < x.m(); ++c) {
      y.h(r, c) = x.h(r, c).real();
      if (r + 1 < x.n()) y.jv(r, c) = x.jv(r, c).real();
      if (c + 1 < x.m()) y.jh(r, c) = x.jh(r, c).real();
    }
  return std::abs(transfer_matrix_Z(y).value());
}

}  // namespace

TEST(Oracle, SingleSpin) {
  IsingInstance x(1, 1);
  x.h(0, 0) = 1;
  EXPECT_NEAR(brute_force_Z(x).z.real(), 3.086161269630488, 1e-14);
  x.h(0, 0) = {0, kPi / 4};
  EXPECT_LT(std::abs(brute_force_Z(x).z - cplx(std::sqrt(2.0))), 1e-14);
}

TEST(Oracle, TwoSpinChain) {
  IsingInstance x(1, 2);
  x.jh(0, 0) = 0.7;
  EXPECT_NEAR(brute_force_Z(x).z.real(), 4 * std::cosh(0.7), 1e-13);
  EXPECT_NEAR(transfer_matrix_Z(x).z.real(), 4 * std::cosh(0.7), 1e-13);
}

TEST(Oracle, TwoByTwoTermByTerm) {
  IsingInstance x(2, 2);
  x.jv(0, 0) = x.jv(0, 1) = x.jh(0, 0) = x.jh(1, 0) = 1;
  // 4-cycle: count configurations by number of satisfied bonds
  cplx z{};
  for (int s = 0; s < 16; ++s) {
    int a = s & 1 ? -1 : 1, b = s & 2 ? -1 : 1, c = s & 4 ? -1 : 1, d = s & 8 ? -1 : 1;
    // vertex order r*m+c: a=(0,0) b=(0,1) c=(1,0) d=(1,1)
    z += std::exp(static_cast<double>(a * b + c * d + a * c + b * d));
  }
  EXPECT_LT(rel(brute_force_Z(x).z, z), 1e-14);
  EXPECT_NEAR(z.real(), 2 * std::exp(4.0) + 2 * std::exp(-4.0) + 12, 1e-12);
}

TEST(Oracle, BruteGuard) {
  IsingInstance x(3, 9);
  EXPECT_THROW(brute_force_Z(x), std::invalid_argument);
}

TEST(Oracle, ThreadCountDoesNotChangeResult) {
  auto x = random_instance(3, 5, DomainClass::General, 4);
  auto a = brute_force_Z(x, {false, 1}).z;
  auto b = brute_force_Z(x, {false, 3}).z;
  EXPECT_EQ(a, b);
}

TEST(Oracle, BruteVsTransferAcrossDomains) {
  for (auto d : {DomainClass::Problem1, DomainClass::Problem2, DomainClass::Problem3, DomainClass::Physical,
                 DomainClass::General})
    for (uint64_t s = 0; s < 200; ++s) {
      Rng pick(s * 31 + 7);
      int n = 1 + static_cast<int>(pick.below(4));
      int m = 1 + static_cast<int>(pick.below(static_cast<uint64_t>(20 / n)));
      auto x = random_instance(n, m, d, s);
      auto b = brute_force_Z(x).value();
      auto t = transfer_matrix_Z(x).value();
      const double denom = std::max(std::abs(b), 1e-6 * modulus_scale(x));
      EXPECT_LT(std::abs(t - b) / denom, 1e-10) << to_string(d) << " " << n << "x" << m;
    }
}

TEST(Oracle, DisconnectedFactorizes) {
  auto x = random_instance(3, 3, DomainClass::General, 9);
  IsingInstance y(3, 3);
  cplx expect = 1;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      y.h(r, c) = x.h(r, c);
      expect *= 2.0 * std::cosh(x.h(r, c));
    }
  EXPECT_LT(rel(brute_force_Z(y).z, expect), 1e-12);
}

TEST(Oracle, FlipSymmetry) {
  auto x = random_instance(2, 3, DomainClass::General, 13);
  IsingInstance y = x;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) y.h(r, c) = -x.h(r, c);
  EXPECT_LT(rel(brute_force_Z(y).z, brute_force_Z(x).z), 1e-12);
}

TEST(Oracle, LongChainMatchesTwoByTwoProduct) {
  auto x = random_instance(1, 200, DomainClass::Physical, 17);
  // independent: explicit 2x2 matrices T_c = diag(e^{h}) [[e^J, e^-J],[e^-J, e^J]]
  std::array<cplx, 2> v = {std::exp(x.h(0, 0)), std::exp(-x.h(0, 0))};
  double log_scale = 0;
  for (int c = 1; c < 200; ++c) {
    const cplx j = x.jh(0, c - 1), hh = x.h(0, c);
    std::array<cplx, 2> w = {(std::exp(j) * v[0] + std::exp(-j) * v[1]) * std::exp(hh),
                             (std::exp(-j) * v[0] + std::exp(j) * v[1]) * std::exp(-hh)};
    const double s = std::abs(w[0]) + std::abs(w[1]);
    v = {w[0] / s, w[1] / s};
    log_scale += std::log(s);
  }
  auto t = transfer_matrix_Z(x);
  const double lt = std::log(std::abs(t.z)) + t.log_scale;
  const double lc = std::log(std::abs(v[0] + v[1])) + log_scale;
  EXPECT_NEAR(lt, lc, 1e-10 * std::abs(lc));
}

TEST(Oracle, TransferLargeCellFastAndConsistent) {
  auto x = random_instance(2, 15, DomainClass::Problem2, 3);
  auto t0 = std::chrono::steady_clock::now();
  auto full = transfer_matrix_Z(x);
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(dt, 1e-3);
  EXPECT_TRUE(std::isfinite(std::abs(full.value())));
  // truncated 2x4 sub-lattice from the same columns
  IsingInstance y(2, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) {
      y.h(r, c) = x.h(r, c);
      if (r == 0) y.jv(r, c) = x.jv(r, c);
      if (c < 3) y.jh(r, c) = x.jh(r, c);
    }
  EXPECT_LT(rel(transfer_matrix_Z(y).value(), brute_force_Z(y).value()), 1e-12);
}

TEST(Oracle, TransferKeepsScaleForHugeLattices) {
  IsingInstance x(2, 400);
  for (int c = 0; c < 400; ++c) {
    x.jv(0, c) = 2;
    if (c < 399) x.jh(0, c) = x.jh(1, c) = 2;
  }
  auto t = transfer_matrix_Z(x);
  EXPECT_GT(t.log_scale, 700);
  // two ground states, dressed by the cheapest excitations: 399 column
  // domain walls (cost 8), 4 corner flips (cost 8), 796 bulk flips (cost 12)
  const double bonds = 400 * 2.0 + 2 * 399 * 2.0;
  const double approx = bonds + std::log(2.0) + 399 * std::log1p(std::exp(-8.0)) + 4 * std::exp(-8.0) +
                        796 * std::exp(-12.0);
  EXPECT_NEAR(std::log(std::abs(t.z)) + t.log_scale, approx, 0.01);
}

TEST(Oracle, FreeEnergy) {
  IsingInstance x(2, 2);
  auto r = free_energy_report(x, std::exp(4.0), 0, 10);
  EXPECT_NEAR(r.free_energy, 1, 1e-15);
  EXPECT_EQ(r.epsilon, 0);
  r = free_energy_report(x, 1, 10, 10);
  EXPECT_NEAR(r.epsilon, std::log(2.0) / 4, 1e-15);

  x.jv(0, 0) = x.jv(0, 1) = x.jh(0, 0) = x.jh(1, 0) = 0.5;
  auto z = brute_force_Z(x).z;
  EXPECT_NEAR(free_energy_report(x, z, 1, 1).free_energy, std::log(z.real()) / 4, 1e-15);
  EXPECT_THROW(free_energy_report(x, -1, 1, 1), std::invalid_argument);
}
