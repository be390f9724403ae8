#include <gtest/gtest.h>

#include "isingq/model.hpp"
#include "isingq/model_io.hpp"

using namespace isingq;

TEST(Model, CountingIdentities) {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 5; ++m) {
      IsingInstance x(n, m);
      EXPECT_EQ(x.num_vertices(), n * m);
      EXPECT_EQ(x.num_vertical(), (n - 1) * m);
      EXPECT_EQ(x.num_horizontal(), n * (m - 1));
      EXPECT_EQ(x.num_decorated(), 3 * n * m - n - m);
    }
}

TEST(Model, OutOfBoundsEdges) {
  IsingInstance x(2, 3);
  EXPECT_THROW(x.jv(1, 0), std::out_of_range);
  EXPECT_THROW(x.jh(0, 2), std::out_of_range);
  EXPECT_NO_THROW(x.jh(1, 1));
  EXPECT_THROW(IsingInstance(0, 3), std::invalid_argument);
}

TEST(Model, ParseMinimal) {
  auto x = parse_instance(R"({"n":1,"m":1,"h":[[0,0,1,0]]})");
  EXPECT_EQ(x.n(), 1);
  EXPECT_EQ(x.h(0, 0), cplx(1, 0));
}

TEST(Model, ParseMissingEntriesAreZero) {
  auto x = parse_instance(R"({"n":2,"m":2,"h":[[1,1,0.5,0]],"jh":[[0,0,1,2]]})");
  for (int c = 0; c < 2; ++c) EXPECT_EQ(x.jv(0, c), cplx{});
  EXPECT_EQ(x.jh(0, 0), cplx(1, 2));
  EXPECT_EQ(x.h(0, 0), cplx{});
}

TEST(Model, ParseErrors) {
  EXPECT_THROW(parse_instance(R"({"n":0,"m":2})"), std::invalid_argument);
  EXPECT_THROW(parse_instance(R"({"n":2,"m":2,"jv":[[1,0,1,0]]})"), std::out_of_range);
  EXPECT_THROW(parse_instance(R"({"n":2,"m":2,"h":[[0,0,"x",0]]})"), std::invalid_argument);
  EXPECT_THROW(parse_instance("{not json"), std::invalid_argument);
  EXPECT_THROW(parse_instance(R"({"n":1,"m":1,"h":[[0,0,1e999,0]]})"), std::invalid_argument);
}

TEST(Model, RoundTripRandom) {
  for (uint64_t s = 0; s < 100; ++s) {
    auto d = static_cast<DomainClass>(s % 5);
    auto x = random_instance(3, 4, d, s);
    auto y = parse_instance(serialize_instance(x));
    EXPECT_EQ(x, y) << s;
  }
}

TEST(Model, SerializeEmitsBothComponents) {
  IsingInstance x(1, 2);
  x.jh(0, 0) = {0.25, -1.5};
  auto doc = nlohmann::json::parse(serialize_instance(x));
  ASSERT_EQ(doc["jh"].size(), 1u);
  EXPECT_EQ(doc["jh"][0][2].get<double>(), 0.25);
  EXPECT_EQ(doc["jh"][0][3].get<double>(), -1.5);
}

TEST(Model, ClassifyExamples) {
  IsingInstance p2(2, 2);
  const cplx q{0, kPi / 4};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) p2.h(r, c) = q;
  p2.jv(0, 0) = q;
  p2.jh(0, 0) = q;
  p2.jh(1, 0) = kOmega;
  EXPECT_EQ(classify_domain(p2), DomainClass::Problem2);

  IsingInstance ph(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) ph.h(r, c) = 0.3;
  ph.jv(0, 0) = ph.jv(0, 1) = ph.jh(0, 0) = ph.jh(1, 0) = 0.5;
  EXPECT_EQ(classify_domain(ph), DomainClass::Physical);

  ph.h(1, 1) = {0.1, 0.1};
  EXPECT_EQ(classify_domain(ph), DomainClass::General);
}

TEST(Model, ClassifyProblem1NeedsOddQuarterPi) {
  IsingInstance x(1, 2);
  x.h(0, 0) = {0, 0.3};
  x.jh(0, 0) = {0.7, 3 * kPi / 4};
  EXPECT_EQ(classify_domain(x), DomainClass::Problem1);
  x.jh(0, 0) = {0.7, kPi / 2};
  EXPECT_EQ(classify_domain(x), DomainClass::General);
}

TEST(Model, RandomInstanceMatchesDomain) {
  for (auto d : {DomainClass::Problem1, DomainClass::Problem2, DomainClass::Problem3, DomainClass::Physical,
                 DomainClass::General})
    for (uint64_t s = 0; s < 50; ++s)
      for (auto [n, m] : {std::pair{1, 1}, {2, 3}, {3, 2}}) {
        auto x = random_instance(n, m, d, s);
        EXPECT_EQ(classify_domain(x), d) << to_string(d) << " seed " << s;
      }
}

TEST(Model, RandomInstanceDeterministic) {
  EXPECT_EQ(random_instance(2, 3, DomainClass::Problem1, 7), random_instance(2, 3, DomainClass::Problem1, 7));
  EXPECT_NE(random_instance(2, 3, DomainClass::Problem1, 7), random_instance(2, 3, DomainClass::Problem1, 8));
}

TEST(Model, PhysicalRange) {
  auto x = random_instance(2, 2, DomainClass::Physical, 3);
  for (const auto* v : {&x.h_values(), &x.jv_values(), &x.jh_values()})
    for (auto z : *v) {
      EXPECT_EQ(z.imag(), 0);
      EXPECT_LE(std::abs(z.real()), 2);
    }
}

TEST(Model, Problem2ValueSet) {
  const cplx q{0, kPi / 4};
  auto x = random_instance(2, 2, DomainClass::Problem2, 11);
  for (auto z : x.h_values()) EXPECT_EQ(z, q);
  for (auto z : x.jv_values()) EXPECT_TRUE(z == q || z == cplx{});
  for (auto z : x.jh_values()) EXPECT_TRUE(z == q || z == kOmega);
}

TEST(Model, EnergyExamples) {
  IsingInstance a(1, 1);
  a.h(0, 0) = 1;
  EXPECT_EQ(energy(a, {0}), cplx(-1));

  IsingInstance b(1, 2);
  b.jh(0, 0) = 1;
  EXPECT_EQ(energy(b, {0, 1}), cplx(1));
  EXPECT_THROW(energy(b, {0}), std::invalid_argument);
}

TEST(Model, EnergyMatchesDoubleLoop) {
  auto x = random_instance(2, 3, DomainClass::General, 5);
  Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> s(6);
    for (auto& b : s) b = static_cast<int>(rng.below(2));
    // second implementation: iterate over edge lists
    cplx e{};
    auto sg = [&](int i) { return s[i] ? -1.0 : 1.0; };
    for (int i = 0; i < 6; ++i) e -= x.h_values()[i] * sg(i);
    for (int c = 0; c < 3; ++c) e -= x.jv(0, c) * sg(c) * sg(3 + c);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) e -= x.jh(r, c) * sg(3 * r + c) * sg(3 * r + c + 1);
    EXPECT_LT(std::abs(e - energy(x, s)), 1e-14);
  }
}

TEST(Model, EnergyLinearInCouplings) {
  auto x = random_instance(2, 3, DomainClass::General, 21);
  std::vector<int> s = {0, 1, 1, 0, 0, 1};
  auto scaled = [&](double t) {
    IsingInstance y = x;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 3; ++c) {
        if (r == 0) y.jv(r, c) *= t;
        if (c < 2) y.jh(r, c) *= t;
      }
    return energy(y, s);
  };
  const cplx e0 = scaled(0), e1 = scaled(1), e2 = scaled(2);
  EXPECT_LT(std::abs(e2 - (2.0 * e1 - e0)), 1e-13);
}
