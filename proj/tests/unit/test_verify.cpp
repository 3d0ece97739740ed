#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bohr/multiindex.hpp"
#include "bohr/polynorms.hpp"
#include "bohr/radii.hpp"
#include "bohr/verify.hpp"

using namespace bohr;

namespace {

const Exponent kInf = Exponent::infinity();
const Exponent kTwo = Exponent::finite(2.0);

Complex coefficient_at(const TruncatedPowerSeries& f, std::uint32_t k) {
  for (auto& t : f.terms())
    if (t.index[0] == k) return t.coeff[0];
  return 0.0;
}

}  // namespace

TEST(Moebius, Coefficients) {
  auto f = moebius_family(0.5, 10);
  EXPECT_DOUBLE_EQ(coefficient_at(f, 0).real(), 0.5);
  EXPECT_DOUBLE_EQ(coefficient_at(f, 1).real(), -0.75);
  EXPECT_DOUBLE_EQ(coefficient_at(f, 2).real(), -0.375);
  ASSERT_TRUE(f.declared_sup().has_value());
  EXPECT_EQ(*f.declared_sup(), 1.0);
  ASSERT_TRUE(f.omitted_tail().has_value());

  // truncation agrees with (a - z) / (1 - a z) up to the declared tail
  const double a = 0.7, r = 0.6;
  auto g = moebius_family(a, 30);
  for (double th : {0.0, 1.0, 2.5}) {
    Complex z = std::polar(r, th);
    Complex exact = (a - z) / (1.0 - a * z);
    double tail = g.omitted_tail()->majorant(30, r);
    EXPECT_LE(std::abs(evaluate(g, CVector{z})[0] - exact), tail + 1e-14);
  }
  EXPECT_THROW(moebius_family(1.0, 10), std::invalid_argument);
}

TEST(CheckBohrSample, ConstantFunctionHolds) {
  auto spec = SpaceSpec{2, kInf, 2, kTwo};
  TruncatedPowerSeries f(0, spec, {Term{MultiIndex({0, 0}), {Complex(0.3), Complex(0, 0.4)}}});
  for (double r : {0.0, 0.5, 1.0}) {
    auto v = check_bohr_sample(f, r, 1.0, CertifiedSup{64});
    EXPECT_EQ(v.kind, VerdictKind::Holds);
    EXPECT_GE(v.margin, -1e-12);
  }
}

TEST(CheckBohrSample, MoebiusBoundary) {
  auto f = moebius_family(0.9, 60);
  auto bad = check_bohr_sample(f, 0.4, 1.0, DeclaredSup{1.0});
  EXPECT_EQ(bad.kind, VerdictKind::Violated);
  EXPECT_TRUE(bad.certified);
  double closed = 0.9 + 0.19 * 0.4 / (1 - 0.36);
  EXPECT_NEAR(bad.margin, 1.0 - closed, 1e-3);

  auto good = check_bohr_sample(f, 1.0 / 3.0, 1.0, DeclaredSup{1.0});
  EXPECT_EQ(good.kind, VerdictKind::Holds);
  EXPECT_GT(good.margin, 0.0);

  EXPECT_THROW(check_bohr_sample(f, 0.3, 1.0, DeclaredSup{0.0}), std::invalid_argument);
  EXPECT_THROW(check_bohr_sample(f, 1.3, 1.0, DeclaredSup{1.0}), std::invalid_argument);
}

TEST(CheckBohrSample, MoebiusScanFlipsOnce) {
  for (double a : {0.5, 0.8, 0.95}) {
    auto f = moebius_family(a, 60);
    bool seen_violation = false;
    double prev_margin = 10;
    for (double r = 0.30; r <= 0.6; r += 0.01) {
      auto v = check_bohr_sample(f, r, 1.0, DeclaredSup{1.0});
      if (seen_violation) EXPECT_NE(v.kind, VerdictKind::Holds) << a << " " << r;
      seen_violation = seen_violation || v.kind == VerdictKind::Violated;
      EXPECT_LE(v.margin, prev_margin + 1e-12);
      prev_margin = v.margin;
    }
  }
}

TEST(CheckBohrSample, HeuristicSupNeverCertifiesViolation) {
  int count = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto q : {kTwo, kInf}) {
      const double beta = solve_root(SeriesSpec{n, SqrtNCoefficients{}, 1.0}, 1e-10).root.lo;
      for (int i = 0; i < 34; ++i, ++count) {
        auto f = random_series(SpaceSpec::scalar(n, q), 2 + i % 11, 1000 * n + i);
        auto v = check_bohr_sample(f, beta, 1.0, HeuristicSup{8, static_cast<std::uint64_t>(i)});
        EXPECT_FALSE(v.kind == VerdictKind::Violated && v.certified);
      }
    }
  }
  EXPECT_GE(count, 200);
}

TEST(WienerBound, MoebiusEqualityCase) {
  for (double a : {0.2, 0.5, 0.9}) {
    auto f = moebius_family(a, 40);
    auto v = wiener_bound_check(f, 1, 1.0, 50, 0);
    EXPECT_EQ(v.kind, VerdictKind::Holds);
    EXPECT_NEAR(v.margin, 0.0, 1e-12);
  }
}

TEST(WienerBound, SingleMonomialHolds) {
  auto spec = SpaceSpec::scalar(3, kInf);
  TruncatedPowerSeries f(2, spec, {Term{MultiIndex({1, 1, 0}), {Complex(0.8)}}});
  auto v = wiener_bound_check(f, 2, std::sqrt(6.0), 100, 1);
  EXPECT_EQ(v.kind, VerdictKind::Holds);
}

TEST(WienerBound, RandomNormalizedInstances) {
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + i % 3;
    auto spec = SpaceSpec::scalar(n, i % 2 ? kInf : kTwo);
    auto norm = normalize_sup(random_series(spec, 4, i), 1.0, i);
    double cap = std::sqrt(static_cast<double>(count_multi_indices(2, n)));
    auto v = wiener_bound_check(norm.f, 2, cap, 100, i);
    EXPECT_NE(v.kind, VerdictKind::Violated) << i;
  }
}

TEST(WienerBound, FailsForVectorCodomain) {
  // f(z) = (1, z) into l^inf_2 has sup norm 1 and ||x_0|| = 1
  auto spec = SpaceSpec{1, kInf, 2, kInf};
  TruncatedPowerSeries f(1, spec, {Term{MultiIndex({0}), {Complex(1), Complex(0)}},
                                   Term{MultiIndex({1}), {Complex(0), Complex(1)}}});
  auto v = wiener_bound_check(f, 1, 1.0, 10, 0);
  EXPECT_EQ(v.kind, VerdictKind::Violated);
  EXPECT_TRUE(v.certified);
  EXPECT_NEAR(v.margin, -1.0, 1e-12);
}

TEST(CornerStrictness, TwoCornersAtEqualPoint) {
  for (std::uint32_t m = 1; m <= 4; ++m) {
    auto spec = SpaceSpec::scalar(2, kInf);
    std::vector<CVector> dense(count_multi_indices(m, 2), CVector{Complex(0)});
    dense.front() = {Complex(1)};
    dense.back() = {Complex(1)};
    auto q = HomogeneousPolynomial::from_dense(m, spec, dense);
    const double t = 0.6;
    auto v = corner_strictness_check(q, CVector{Complex(t), Complex(t)}, 100, m);
    EXPECT_EQ(v.kind, VerdictKind::Holds);
    double expect = 2 * std::pow(t, m) - std::sqrt(2.0) * std::pow(t, m);
    EXPECT_NEAR(v.margin, expect, 1e-6);
  }
}

TEST(CornerStrictness, PreconditionsAreReported) {
  auto spec = SpaceSpec::scalar(2, kInf);
  auto single = HomogeneousPolynomial::from_dense(2, spec, {{Complex(1)}, {Complex(0)}, {Complex(0)}});
  EXPECT_THROW(corner_strictness_check(single, CVector{Complex(0.5), Complex(0.5)}, 10, 0), std::invalid_argument);
  auto both = HomogeneousPolynomial::from_dense(2, spec, {{Complex(1)}, {Complex(0)}, {Complex(1)}});
  EXPECT_THROW(corner_strictness_check(both, CVector{Complex(0.5), Complex(0.0)}, 10, 0), std::invalid_argument);
  EXPECT_THROW(corner_strictness_check(both, CVector{Complex(0.5)}, 10, 0), std::invalid_argument);
}

TEST(CornerStrictness, RandomVectorInstances) {
  auto spec = SpaceSpec{2, kInf, 2, kTwo};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.2, 1.0), ph(0, 6.283185307179586);
  for (int i = 0; i < 20; ++i) {
    auto q = random_corner_instance(2 + i % 2, spec, i);
    CVector z{std::polar(u(rng), ph(rng)), std::polar(u(rng), ph(rng))};
    auto v = corner_strictness_check(q, z, 1000, i);
    EXPECT_EQ(v.kind, VerdictKind::Holds) << i;
    EXPECT_GT(v.margin, 0.0);
  }
}

TEST(CornerStrictness, FailsForSupNormCodomain) {
  // x_{20} = x_{02} = (1, 0), x_{11} = (0, 2) into l^inf_2 at z = (t, t):
  // orbit max is 2 t^2, the l^2 aggregate is sqrt(6) t^2
  auto spec = SpaceSpec{2, kInf, 2, kInf};
  auto q = HomogeneousPolynomial::from_dense(2, spec,
                                             {{Complex(1), Complex(0)}, {Complex(0), Complex(2)}, {Complex(1), Complex(0)}});
  auto v = corner_strictness_check(q, CVector{Complex(0.5), Complex(0.5)}, 100, 0);
  EXPECT_EQ(v.kind, VerdictKind::Violated);
  EXPECT_TRUE(v.certified);
  EXPECT_LT(v.margin, 0.0);
  EXPECT_GE(v.margin, (2 - std::sqrt(6.0)) * 0.25);
}

TEST(Generators, DeterministicAndNormalized) {
  auto spec = SpaceSpec::scalar(2, kInf);
  auto a = random_series(spec, 3, 9), b = random_series(spec, 3, 9);
  ASSERT_EQ(a.terms().size(), b.terms().size());
  EXPECT_EQ(a.terms().size(), 10u);
  for (std::size_t i = 0; i < a.terms().size(); ++i) EXPECT_EQ(a.terms()[i].coeff, b.terms()[i].coeff);

  auto norm = normalize_sup(a, 1.0, 0);
  EXPECT_TRUE(norm.certified);
  EXPECT_LE(norm_sup_certified(norm.f, 64).lo, 1.0);
  auto loose = normalize_sup(random_series(SpaceSpec::scalar(2, kTwo), 3, 9), 1.0, 0);
  EXPECT_FALSE(loose.certified);

  auto q = random_corner_instance(3, SpaceSpec{3, kInf, 2, kTwo}, 5);
  auto c1 = q.coefficient(MultiIndex::corner(3, 0, 3));
  auto c2 = q.coefficient(MultiIndex::corner(3, 1, 3));
  ASSERT_NE(c1, nullptr);
  ASSERT_NE(c2, nullptr);
  bool shared = false;
  for (std::size_t k = 0; k < 2; ++k) shared = shared || ((*c1)[k] != 0.0 && (*c2)[k] != 0.0);
  EXPECT_TRUE(shared);
  EXPECT_THROW(random_corner_instance(2, SpaceSpec::scalar(1, kInf), 0), std::invalid_argument);
}
