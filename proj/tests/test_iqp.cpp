#include <gtest/gtest.h>

#include "isingq/iqp.hpp"
#include "isingq/simulator.hpp"

using namespace isingq;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

Mat4 controlled_z_rotation(double t) { return gates::controlled(gates::Zrot(t)); }

}  // namespace

TEST(IqpGadgets, ControlledZRotation) {
  for (double t : {0.3, -1.2, kPi}) {
    // Lambda(Z(t)) = e^{i t ZZ/4} e^{-i t Z_target/4}, control on the first qubit
    const Mat4 want = gates::expZZ({0, t / 4}) * kron(Mat2::identity(), gates::expZ({0, -t / 4}));
    EXPECT_LT(max_abs_diff(controlled_z_rotation(t), want), 1e-13);
    // X^l on the control flips the sign of the ZZ term
    const Mat4 x1 = kron(gates::X(), Mat2::identity());
    const Mat4 flipped = gates::expZZ({0, -t / 4}) * kron(Mat2::identity(), gates::expZ({0, -t / 4}));
    EXPECT_LT(max_abs_diff(x1 * controlled_z_rotation(t) * x1, flipped), 1e-13);
  }
}

TEST(IqpGadgets, CZDecompositionWithPhase) {
  const Mat4 rhs = std::polar(1.0, kPi / 4) *
                   (gates::expZZ({0, kPi / 4}) * kron(gates::expZ({0, -kPi / 4}), gates::expZ({0, -kPi / 4})));
  EXPECT_LT(max_abs_diff(gates::CZ(), rhs), 1e-13);
}

TEST(IqpGadgets, HadamardTeleport) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    std::array<cplx, 2> psi = {cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)}, cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    // (<+| (x) I) CZ (psi (x) |+>), result on the second qubit
    std::array<cplx, 2> out{};
    const double s = 1 / std::sqrt(2.0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out[b] += s * psi[a] * s * ((a & b) ? -1.0 : 1.0);
    const Mat2 h = gates::H();
    for (int b = 0; b < 2; ++b) EXPECT_LT(std::abs(out[b] - s * (h(b, 0) * psi[0] + h(b, 1) * psi[1])), 1e-14);
  }
}

TEST(IqpGadgets, RConjugatesYIntoZ) {
  const Mat2 r = 0.5 * (gates::X() + gates::Z() + gates::Y() + cplx{0, 1} * Mat2::identity());
  EXPECT_LT(unitarity_error(r), 1e-14);
  for (double t : {0.4, 2.0}) EXPECT_LT(phase_free_distance(r * gates::Yrot(t) * adjoint(r), gates::Zrot(t)), 1e-13);
  // |0> goes to |+> up to phase
  const cplx a0 = r(0, 0), a1 = r(1, 0);
  EXPECT_NEAR(std::abs(a0 + a1) / std::sqrt(2.0), 1, 1e-14);
}

TEST(Iqp, QubitCounts) {
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto x = random_instance(n, m, DomainClass::Physical, 1);
    EXPECT_EQ(to_commuting(x).num_qubits, x.num_decorated() + x.num_vertices() + x.num_horizontal());
  }
}

TEST(Iqp, CommutingAmplitudeIdentity) {
  for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}})
    for (uint64_t s = 0; s < 10; ++s) {
      auto x = random_instance(n, m, DomainClass::Physical, s);
      auto cc = to_commuting(x);
      const cplx z = brute_force_Z(x).z;
      EXPECT_LT(rel(cc.prefactor * iqp_amplitude(cc), z), 1e-9) << n << "x" << m << " seed " << s;
    }
}

TEST(Iqp, DeltaPrime) {
  auto x = random_instance(2, 2, DomainClass::Physical, 4);
  auto cc = to_commuting(x);
  double want = delta_o(x) * std::pow(2.0, x.n() / 2.0);
  for (const auto& s : projection_specs(x)) want *= s.norm / std::sqrt(2.0);
  for (int r = 0; r < x.n(); ++r) want *= type1_spec(weighted_bra(x.h(r, x.m() - 1))).norm / std::sqrt(2.0);
  EXPECT_NEAR(cc.delta_prime / want, 1, 1e-12);
}

TEST(Iqp, RejectsNonPhysical) {
  EXPECT_THROW(to_commuting(random_instance(2, 2, DomainClass::Problem1, 1)), std::invalid_argument);
}

TEST(IqpAmplitude, ClosedForms) {
  CommutingCircuit empty;
  EXPECT_EQ(iqp_amplitude(empty), cplx(1));
  CommutingCircuit one;
  one.num_qubits = 1;
  one.add_z(0, 0.8);
  EXPECT_LT(std::abs(iqp_amplitude(one) - cplx(std::cos(0.8))), 1e-15);
  one.z[0] = kPi;
  EXPECT_LT(std::abs(iqp_amplitude(one) + 1.0), 1e-15);
}

TEST(IqpAmplitude, MatchesGateSequence) {
  for (uint64_t s = 0; s < 5; ++s) {
    auto cc = to_commuting(random_instance(1, 2, DomainClass::Physical, s));
    EXPECT_EQ(cc.num_qubits, 6);
    EXPECT_LT(std::abs(iqp_amplitude(cc) - run_circuit(to_circuit(cc))), 1e-12);
  }
}

TEST(IqpAmplitude, ThreadInvariant) {
  auto cc = to_commuting(random_instance(2, 2, DomainClass::Physical, 3));
  EXPECT_EQ(iqp_amplitude(cc, 1), iqp_amplitude(cc, 3));
}

TEST(RealImagGraph, GraphPartitionFunction) {
  auto x = random_instance(1, 2, DomainClass::Physical, 5);
  auto cc = to_commuting(x);
  auto map = real_imag_instance(x);
  // independent general-graph sum over spins
  const int k = map.model.num_vertices;
  cplx zg{};
  for (uint64_t b = 0; b < (uint64_t{1} << k); ++b) {
    cplx e{};
    auto sg = [&](int a) { return ((b >> a) & 1) ? -1.0 : 1.0; };
    for (const auto& [a, v] : map.model.h) e += v * sg(a);
    for (const auto& [ab, v] : map.model.j) e += v * sg(ab.first) * sg(ab.second);
    zg += std::exp(e);
  }
  EXPECT_LT(std::abs(zg - brute_force_Z(map.model)), 1e-10 * std::abs(zg));
  EXPECT_LT(std::abs(zg - std::ldexp(1.0, k) * iqp_amplitude(cc) * std::polar(1.0, -cc.phase)), 1e-10 * std::abs(zg));
  const cplx z = brute_force_Z(x).z;
  const cplx via = map.delta_prime * std::exp2(map.log2_scale) * std::polar(1.0, map.phase) * zg;
  EXPECT_LT(rel(via, z), 1e-9);
}

TEST(RealImagGraph, ExponentDependsOnlyOnSize) {
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}, {2, 2}}) {
    const double e0 = real_imag_instance(random_instance(n, m, DomainClass::Physical, 0)).log2_scale;
    EXPECT_EQ(e0, -4 * n * m + n + m);
    for (uint64_t s = 1; s < 10; ++s)
      EXPECT_EQ(real_imag_instance(random_instance(n, m, DomainClass::Physical, s)).log2_scale, e0);
  }
  EXPECT_EQ(real_imag_instance(random_instance(2, 2, DomainClass::Physical, 0)).nominal_exponent, -14);
}

TEST(ScaleRatio, Arithmetic) {
  auto r = scale_ratio_report(2.0, 2.0, 10);
  EXPECT_NEAR(r.window, 0.1, 1e-15);
  EXPECT_TRUE(r.multiplicative);
  const double c = 1 - std::pow(2.0, -0.25);
  EXPECT_TRUE(scale_ratio_report(1.0, c * 10, 10).multiplicative);
  EXPECT_FALSE(scale_ratio_report(1.0, std::nextafter(c, 1.0) * 10, 10).multiplicative);
  EXPECT_THROW(scale_ratio_report(0.0, 1, 1), std::invalid_argument);
}

TEST(ScaleRatio, GrowsWithLatticeSize) {
  double prev = 0;
  for (int m = 1; m <= 4; ++m) {
    IsingInstance x(2, m);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < m; ++c) {
        if (r == 0) x.jv(r, c) = 1;
        if (c + 1 < m) x.jh(r, c) = 1;
      }
    const double ratio = scale_ratio_report(brute_force_Z(x).z, delta_general(x), 1).ratio;
    EXPECT_GT(ratio, prev);
    prev = ratio;
  }
}
