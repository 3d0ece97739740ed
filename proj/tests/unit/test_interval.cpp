#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bohr/interval.hpp"

using bohr::Interval;

namespace {

// long double carries 64 mantissa bits on x86, enough to decide containment
// of a single double operation's exact result
bool encloses(const Interval& x, long double exact) {
  return static_cast<long double>(x.lo()) <= exact && exact <= static_cast<long double>(x.hi());
}

}  // namespace

TEST(Interval, ExactResultsStayDegenerate) {
  Interval one(1.0);
  auto q = one / one;
  EXPECT_EQ(q.lo(), 1.0);
  EXPECT_EQ(q.hi(), 1.0);
  auto s = Interval(0.5) + Interval(0.25);
  EXPECT_EQ(s.lo(), 0.75);
  EXPECT_EQ(s.hi(), 0.75);
  auto r = bohr::sqrt(Interval(4.0));
  EXPECT_EQ(r.lo(), 2.0);
  EXPECT_EQ(r.hi(), 2.0);
}

TEST(Interval, InexactResultsAreEnclosed) {
  auto s = Interval(0.1) + Interval(0.2);
  EXPECT_TRUE(encloses(s, 0.1L + 0.2L)) << s.lo() << " " << s.hi();
  EXPECT_LT(s.lo(), s.hi());

  auto third = Interval(1.0) / Interval(3.0);
  EXPECT_TRUE(encloses(third, 1.0L / 3.0L));

  auto r2 = bohr::sqrt(Interval(2.0));
  EXPECT_TRUE(encloses(r2, std::sqrt(2.0L)));
  EXPECT_LE(r2.width(), 2 * std::numeric_limits<double>::epsilon());
}

TEST(Interval, RandomOperationsEncloseExtendedPrecision) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    if (b == 0.0) continue;
    long double la = a, lb = b;
    EXPECT_TRUE(encloses(Interval(a) + Interval(b), la + lb));
    EXPECT_TRUE(encloses(Interval(a) - Interval(b), la - lb));
    EXPECT_TRUE(encloses(Interval(a) * Interval(b), la * lb));
    EXPECT_TRUE(encloses(Interval(a) / Interval(b), la / lb));
    double c = std::fabs(a);
    EXPECT_TRUE(encloses(bohr::sqrt(Interval(c)), std::sqrt(static_cast<long double>(c))));
  }
}

TEST(Interval, WideOperandsUseEndpoints) {
  Interval a(-1.0, 2.0), b(3.0, 4.0);
  auto p = a * b;
  EXPECT_LE(p.lo(), -4.0);
  EXPECT_GE(p.hi(), 8.0);
  auto d = b - a;
  EXPECT_LE(d.lo(), 1.0);
  EXPECT_GE(d.hi(), 5.0);
}

TEST(Interval, Roots) {
  auto r = bohr::root(Interval(8.0), 3);
  EXPECT_TRUE(encloses(r, 2.0L));
  auto r1 = bohr::root(Interval(0.3, 0.4), 1);
  EXPECT_EQ(r1.lo(), 0.3);
  EXPECT_EQ(r1.hi(), 0.4);
  auto r5 = bohr::root(Interval(3.0), 5);
  EXPECT_TRUE(encloses(r5, std::pow(3.0L, 0.2L)));
}

TEST(Interval, InvalidConstruction) {
  EXPECT_THROW(Interval(2.0, 1.0), std::invalid_argument);
}

TEST(BoundInterval, StatusCombination) {
  using bohr::BoundStatus;
  EXPECT_EQ(bohr::combine(BoundStatus::Certified, BoundStatus::Heuristic), BoundStatus::Heuristic);
  EXPECT_EQ(bohr::combine(BoundStatus::Certified, BoundStatus::Certified), BoundStatus::Certified);
  EXPECT_TRUE(bohr::BoundInterval::exact(0.5).contains(0.5));
  EXPECT_TRUE((bohr::BoundInterval{0, 1, BoundStatus::Clamped}).certified());
  EXPECT_FALSE((bohr::BoundInterval{0, 1, BoundStatus::Heuristic}).certified());
}

TEST(Interval, DomainErrors) {
  EXPECT_THROW(Interval(1.0) / Interval(-1.0, 1.0), std::domain_error);
  EXPECT_THROW(bohr::sqrt(Interval(-1.0, 1.0)), std::domain_error);
  EXPECT_THROW(bohr::root(Interval(1.0), 0), std::invalid_argument);
}

TEST(Interval, RootsOfZeroAndOneAreExact) {
  for (unsigned k = 1; k <= 9; ++k) {
    auto r = bohr::root(Interval(0.0, 1.0), k);
    EXPECT_EQ(r.lo(), 0.0);
    EXPECT_EQ(r.hi(), 1.0);
  }
}
