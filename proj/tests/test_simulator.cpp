#include <gtest/gtest.h>

#include "isingq/compile_unitary.hpp"
#include "isingq/oracle.hpp"
#include "isingq/simulator.hpp"

using namespace isingq;

namespace {

// naive reference: materialize the full 2^k x 2^k matrix of each gate
std::vector<cplx> naive_apply(const std::vector<cplx>& psi, int k, const Gate& g) {
  const size_t dim = size_t{1} << k;
  std::vector<cplx> out(dim);
  auto bit = [](size_t i, int q) { return static_cast<int>((i >> q) & 1); };
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      cplx el;
      if (g.kind == GateKind::GlobalPhase) {
        el = i == j ? std::polar(1.0, g.p[0]) : cplx{};
      } else if (g.q.size() == 1) {
        const int q = g.q[0];
        if ((i ^ j) & ~(size_t{1} << q)) continue;
        el = matrix1(g)(bit(i, q), bit(j, q));
      } else {
        const int a = g.q[0], b = g.q[1];
        if ((i ^ j) & ~((size_t{1} << a) | (size_t{1} << b))) continue;
        el = matrix2(g)(2 * bit(i, a) + bit(i, b), 2 * bit(j, a) + bit(j, b));
      }
      out[i] += el * psi[j];
    }
  return out;
}

Mat2 random_unitary2(Rng& rng) {
  const double a = rng.uniform(0, 2 * kPi), b = rng.uniform(0, 2 * kPi), c = rng.uniform(0, 2 * kPi),
               t = rng.uniform(0, kPi);
  return std::polar(1.0, c) * (gates::phase_diag(a, -a) * gates::Yrot(t) * gates::phase_diag(b, -b) *
                                Mat2::identity());
}

Mat4 random_unitary4(Rng& rng) {
  Mat4 u = kron(random_unitary2(rng), random_unitary2(rng));
  for (int i = 0; i < 3; ++i)
    u = gates::expZZ({0, rng.uniform(-kPi, kPi)}) * gates::CNOT() *
        kron(random_unitary2(rng), random_unitary2(rng)) * u;
  return u;
}

Gate random_gate(Rng& rng, int k) {
  int a = static_cast<int>(rng.below(k)), b = static_cast<int>(rng.below(k - 1));
  if (b >= a) ++b;
  switch (rng.below(11)) {
    case 0: return Gate::h(a);
    case 1: return Gate::x(a);
    case 2: return Gate::phase_diag(a, rng.uniform(-3, 3), rng.uniform(-3, 3));
    case 3: return Gate::zrot(a, rng.uniform(-3, 3));
    case 4: return Gate::xrot(a, rng.uniform(-3, 3));
    case 5: return Gate::zz(a, b, {0, rng.uniform(-3, 3)});
    case 6: return Gate::cz(a, b);
    case 7: return Gate::cy(a, b, rng.uniform(-3, 3));
    case 8: return Gate::global_phase(rng.uniform(-3, 3));
    case 9: return Gate::generic(a, random_unitary2(rng));
    default: return Gate::generic(a, b, random_unitary4(rng));
  }
}

}  // namespace

TEST(Simulator, Basics) {
  Circuit c(1);
  c.add(Gate::h(0));
  EXPECT_NEAR(std::abs(run_circuit(c) - cplx(1 / std::sqrt(2.0))), 0, 1e-15);
  Circuit x(1);
  x.add(Gate::x(0));
  EXPECT_EQ(run_circuit(x), cplx{});
}

TEST(Simulator, HTwiceIsIdentity) {
  Rng rng(1);
  StateVector s(3);
  for (auto& a : s.data()) a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  auto before = s.data();
  s.apply(Gate::h(1));
  s.apply(Gate::h(1));
  for (size_t i = 0; i < s.dim(); ++i) EXPECT_LT(std::abs(s[i] - before[i]), 1e-14);
}

TEST(Simulator, CZSymmetric) {
  Rng rng(2);
  StateVector s(3), t(3);
  for (size_t i = 0; i < s.dim(); ++i) s[i] = t[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  s.apply(Gate::cz(0, 2));
  t.apply(Gate::cz(2, 0));
  EXPECT_EQ(s.data(), t.data());
}

TEST(Simulator, MatchesNaiveFullMatrix) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(5));
    StateVector s(k);
    std::vector<cplx> ref = s.data();
    for (int g = 0; g < 25; ++g) {
      Gate gate = random_gate(rng, k);
      s.apply(gate);
      ref = naive_apply(ref, k, gate);
    }
    for (size_t i = 0; i < s.dim(); ++i) EXPECT_LT(std::abs(s[i] - ref[i]), 1e-12);
    EXPECT_NEAR(s.norm2(), 1, 1e-10);
  }
}

TEST(Simulator, Generic2QAgainstBasisExpansion) {
  Rng rng(4);
  Mat4 u = random_unitary4(rng);
  EXPECT_LT(unitarity_error(u), 1e-13);
  StateVector s(3);
  for (auto& a : s.data()) a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  auto ref = naive_apply(s.data(), 3, Gate::generic(2, 0, u));
  s.apply(Gate::generic(2, 0, u));
  for (size_t i = 0; i < s.dim(); ++i) EXPECT_LT(std::abs(s[i] - ref[i]), 1e-13);
}

TEST(Simulator, InverseGivesConjugateAmplitude) {
  Rng rng(5);
  Circuit c(4);
  for (int g = 0; g < 40; ++g) c.add(random_gate(rng, 4));
  EXPECT_LT(std::abs(std::conj(run_circuit(c)) - run_circuit(c.inverse())), 1e-12);
}

TEST(Simulator, ProjectZeroIsUnnormalized) {
  Circuit c(2);
  c.add(Gate::h(0));
  c.add(Gate::h(1));
  c.add(Gate::project_zero(1));
  c.add(Gate::h(1));
  EXPECT_FALSE(c.unitary());
  EXPECT_NEAR(run_circuit(c).real(), 0.5 / std::sqrt(2.0), 1e-15);
}

TEST(Simulator, ConstantDepthTwoByTwo) {
  auto x = random_instance(2, 2, DomainClass::Problem1, 6);
  auto c = build_constant_depth(x);
  auto z = brute_force_Z(x).z;
  EXPECT_LT(std::abs(c.scale * run_circuit(c) - z) / std::abs(z), 1e-10);
}

TEST(HadamardTest, Identity) {
  Circuit c(2);
  auto e = hadamard_test(c, 1000, 1);
  EXPECT_EQ(e.re, 1.0);
  EXPECT_NEAR(e.stderr_bound, 1 / std::sqrt(1000.0), 1e-15);
}

TEST(HadamardTest, ExactProbabilities) {
  Rng rng(7);
  Circuit c(3);
  for (int g = 0; g < 20; ++g) c.add(random_gate(rng, 3));
  const cplx amp = run_circuit(c);
  EXPECT_NEAR(hadamard_p0(c, false), (1 + amp.real()) / 2, 1e-12);
  EXPECT_NEAR(hadamard_p0(c, true), (1 + amp.imag()) / 2, 1e-12);
}

TEST(HadamardTest, XGateBound) {
  Circuit c(1);
  c.add(Gate::x(0));
  const uint64_t n = 1000000;
  int ok = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) ok += std::abs(hadamard_test(c, n, seed).re) <= 5 / std::sqrt(1.0 * n);
  EXPECT_GE(ok, 19);
}

TEST(HadamardTest, Deterministic) {
  Circuit c(1);
  c.add(Gate::h(0));
  auto a = hadamard_test(c, 5000, 42), b = hadamard_test(c, 5000, 42);
  EXPECT_EQ(a.re, b.re);
  EXPECT_EQ(a.im, b.im);
}

TEST(HadamardTest, Unbiased) {
  Circuit c(1);
  c.add(Gate::xrot(0, 1.1));
  c.add(Gate::zrot(0, 0.4));
  const cplx amp = run_circuit(c);
  const uint64_t n = 2000;
  double mean_re = 0, mean_im = 0;
  for (uint64_t s = 0; s < 1000; ++s) {
    auto e = hadamard_test(c, n, s);
    mean_re += e.re / 1000;
    mean_im += e.im / 1000;
  }
  EXPECT_LT(std::abs(mean_re - amp.real()), 4 / std::sqrt(1000.0 * n));
  EXPECT_LT(std::abs(mean_im - amp.imag()), 4 / std::sqrt(1000.0 * n));
}

TEST(HadamardTest, RejectsNonUnitary) {
  Circuit c(1);
  c.add(Gate::project_zero(0));
  EXPECT_THROW(hadamard_test(c, 10, 1), std::invalid_argument);
}
