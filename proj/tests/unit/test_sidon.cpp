#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "bohr/cache.hpp"
#include "bohr/multiindex.hpp"
#include "bohr/polynorms.hpp"
#include "bohr/sidon.hpp"

using namespace bohr;

namespace {

const Exponent kInf = Exponent::infinity();
const Exponent kTwo = Exponent::finite(2.0);

double sqrt_n(std::uint32_t m, std::size_t n) { return std::sqrt(static_cast<double>(count_multi_indices(m, n))); }

// max |Q| over a full res x res phase grid of the 2-torus; a lower bound of ||Q||_inf
double torus_grid_max(const HomogeneousPolynomial& q, int res) {
  double best = 0;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      CVector z{std::polar(1.0, 2 * std::numbers::pi * i / res), std::polar(1.0, 2 * std::numbers::pi * j / res)};
      best = std::max(best, vector_norm(evaluate(q, z), q.spec().codomain_exponent));
    }
  return best;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name) : path(std::filesystem::temp_directory_path() / name) { clear(); }
  ~TempFile() { clear(); }
  void clear() {
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".lock");
  }
};

}  // namespace

TEST(SidonNames, RoundTrip) {
  for (auto m : {SidonMethod::ExactM1, SidonMethod::Search, SidonMethod::TrivialOne, SidonMethod::SqrtNCap})
    EXPECT_EQ(parse_sidon_method(to_string(m)), m);
  for (auto s : {UpperSource::Exact, UpperSource::SqrtN, UpperSource::ParitySplit, UpperSource::NormEquivalence})
    EXPECT_EQ(parse_upper_source(to_string(s)), s);
  EXPECT_EQ(to_string(SidonMethod::ExactM1), "exact-m1");
  EXPECT_THROW(parse_sidon_method("nope"), std::invalid_argument);
}

TEST(SidonUpperCap, Values) {
  auto [c1, s1] = sidon_upper_cap(1, SpaceSpec::scalar(5, kInf));
  EXPECT_EQ(c1, 1.0);
  EXPECT_EQ(s1, UpperSource::Exact);
  auto [c2, s2] = sidon_upper_cap(2, SpaceSpec::scalar(2, kInf));
  EXPECT_NEAR(c2, std::sqrt(3.0), 1e-15);
  EXPECT_EQ(s2, UpperSource::SqrtN);
  auto [c3, s3] = sidon_upper_cap(3, SpaceSpec{2, kInf, 2, kTwo});
  EXPECT_NEAR(c3, 2.0, 1e-15);
  EXPECT_EQ(s3, UpperSource::SqrtN);
  // l^4_inf: factor 4^{1/2} = 2, capped by N = 3
  auto [c4, s4] = sidon_upper_cap(2, SpaceSpec{2, kInf, 4, kInf});
  EXPECT_NEAR(c4, 3.0, 1e-15);
  EXPECT_EQ(s4, UpperSource::NormEquivalence);
  EXPECT_NEAR(sidon_tail_factor(SpaceSpec{2, kInf, 4, kInf}), 2.0, 1e-14);
  EXPECT_EQ(sidon_tail_factor(SpaceSpec{2, kInf, 4, kTwo}), 1.0);
}

TEST(SidonBounds, ExactAtDegreeOne) {
  for (auto q : {kInf, kTwo, Exponent::finite(1.5)}) {
    auto e = sidon_bounds(1, SpaceSpec::scalar(5, q), 1000, 0);
    EXPECT_EQ(e.lower, 1.0);
    EXPECT_EQ(e.upper, 1.0);
    EXPECT_EQ(e.method, SidonMethod::ExactM1);
    EXPECT_TRUE(e.certified);
  }
}

TEST(SidonBounds, LinearFormPhaseAlignment) {
  // sup over the polydisc of |sum c_j z_j| is sum |c_j|, reached at aligned phases
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<CVector> c(4);
    double total = 0;
    for (auto& v : c) {
      v = {Complex(g(rng), g(rng))};
      total += std::abs(v[0]);
    }
    auto q = HomogeneousPolynomial::from_dense(1, SpaceSpec::scalar(4, kInf), c);
    CVector z(4);
    for (int j = 0; j < 4; ++j) z[j] = std::conj(c[j][0]) / std::abs(c[j][0]);
    EXPECT_NEAR(std::abs(evaluate(q, z)[0]), total, 1e-9);
    EXPECT_NEAR(norm_sup_heuristic(q, 4, t).lower, total, 1e-9);
    EXPECT_NEAR(norm_one(q).lo, total, 1e-12);
  }
}

TEST(SidonBounds, BudgetZeroIsTrivial) {
  auto e = sidon_bounds(2, SpaceSpec::scalar(2, kInf), 0, 0);
  EXPECT_EQ(e.lower, 1.0);
  EXPECT_NEAR(e.upper, std::sqrt(3.0), 1e-15);
  EXPECT_EQ(e.method, SidonMethod::TrivialOne);
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_EQ(e.witness->terms().size(), 1u);
}

TEST(SidonBounds, SearchFindsCertifiedWitness) {
  auto spec = SpaceSpec::scalar(2, kInf);
  auto e = sidon_bounds(2, spec, 10000, 0);
  EXPECT_EQ(e.method, SidonMethod::Search);
  EXPECT_TRUE(e.certified);
  EXPECT_GE(e.lower, 1.05);
  EXPECT_LE(e.upper, sqrt_n(2, 2));
  EXPECT_EQ(e.upper_source, UpperSource::ParitySplit);
  EXPECT_NEAR(e.upper, 1 + 1 / std::sqrt(2.0), 1e-12);
  ASSERT_TRUE(e.witness.has_value());

  // re-certify the witness: lower <= sum|c| / certified sup
  auto sup = norm_sup_certified(*e.witness, 64);
  EXPECT_LE(e.lower, norm_one(*e.witness).lo / sup.hi * (1 + 1e-12));
  // and it cannot beat the true ratio, bounded above via a grid lower bound of the sup
  EXPECT_LE(e.lower, norm_one(*e.witness).hi / torus_grid_max(*e.witness, 512));
}

TEST(SidonBounds, MonotoneInBudgetAndDeterministic) {
  auto spec = SpaceSpec::scalar(2, kInf);
  double prev = 0;
  for (std::uint64_t b : {0, 50, 100, 250, 500, 1000}) {
    auto e = sidon_bounds(2, spec, b, 7);
    EXPECT_GE(e.lower, prev) << "budget " << b;
    prev = e.lower;
  }
  auto a = sidon_bounds(3, SpaceSpec::scalar(2, kTwo), 300, 5);
  auto b = sidon_bounds(3, SpaceSpec::scalar(2, kTwo), 300, 5);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_FALSE(a.certified);
  auto c = chi_mon(3, SpaceSpec::scalar(2, kTwo), 300, 5);
  EXPECT_EQ(a.lower, c.lower);
  EXPECT_EQ(a.upper, c.upper);
  EXPECT_EQ(a.method, c.method);
}

TEST(SidonBounds, InvariantSweep) {
  for (std::uint32_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto q : {kTwo, kInf})
        for (std::size_t d : {1, 2}) {
          auto e = sidon_bounds(m, SpaceSpec{n, q, d, kTwo}, 100, 1);
          EXPECT_GE(e.lower, 1.0);
          EXPECT_LE(e.lower, e.upper);
          EXPECT_LE(e.upper, sqrt_n(m, n) * (1 + 1e-15));
        }
}

TEST(SidonBounds, VectorLinearFormExceedsOne) {
  // Q = e1 z1 + e2 z2 into l^2_2: ||Q||_1 = 2, ||Q||_inf = sqrt 2
  auto e = sidon_bounds(1, SpaceSpec{2, kInf, 2, kTwo}, 500, 0);
  EXPECT_EQ(e.method, SidonMethod::Search);
  EXPECT_GT(e.lower, 1.3);
  EXPECT_LE(e.lower, std::sqrt(2.0) + 1e-12);
  EXPECT_TRUE(e.certified);
}

TEST(SidonBounds, RejectsBadInput) {
  EXPECT_THROW(sidon_bounds(0, SpaceSpec::scalar(2, kInf), 0, 0), std::invalid_argument);
  SidonSearchOptions bad;
  bad.segment = 0;
  EXPECT_THROW(sidon_bounds(2, SpaceSpec::scalar(2, kInf), 10, 0, bad), std::invalid_argument);
}

TEST(CoefficientTable, TrivialAndValidation) {
  auto t = trivial_table(1, SpaceSpec::scalar(2, kInf));
  ASSERT_EQ(t.per_m.size(), 1u);
  EXPECT_EQ(t.at(1).lower, 1.0);
  EXPECT_EQ(t.at(1).upper, 1.0);

  auto t6 = trivial_table(6, SpaceSpec::scalar(3, kInf));
  for (std::uint32_t m = 1; m <= 6; ++m) {
    EXPECT_GE(t6.at(m).lower, 1.0);
    EXPECT_LE(t6.at(m).lower, t6.at(m).upper);
    EXPECT_LE(t6.at(m).upper, sqrt_n(m, 3) * (1 + 1e-15));
  }
  EXPECT_EQ(t6.truncated(3).per_m.size(), 3u);
  EXPECT_THROW(t6.truncated(7), std::invalid_argument);

  auto broken = t6;
  broken.per_m[2].lower = 100;
  EXPECT_THROW(broken.validate(), std::invalid_argument);
}

TEST(CoefficientTable, CacheReuseAndRebuild) {
  TempFile tmp("bohrkit_test_table.jsonl");
  SidonCache cache(tmp.path);
  auto spec = SpaceSpec::scalar(2, kInf);
  auto first = build_coefficient_table(3, spec, 200, 4, &cache);
  EXPECT_EQ(first.provenance, "computed");
  auto second = build_coefficient_table(3, spec, 200, 4, &cache);
  EXPECT_EQ(second.provenance, "cache");
  ASSERT_EQ(first.per_m.size(), second.per_m.size());
  for (std::size_t i = 0; i < first.per_m.size(); ++i) {
    EXPECT_EQ(first.per_m[i].lower, second.per_m[i].lower);
    EXPECT_EQ(first.per_m[i].upper, second.per_m[i].upper);
  }
  auto wider = build_coefficient_table(4, spec, 200, 4, &cache);
  EXPECT_EQ(wider.provenance, "mixed");

  {
    std::ofstream out(tmp.path, std::ios::app);
    out << "{not json\n";
  }
  auto rebuilt = build_coefficient_table(3, spec, 200, 4, &cache);
  EXPECT_EQ(rebuilt.provenance, "rebuilt");
  EXPECT_EQ(rebuilt.cache_warnings, 1u);
  EXPECT_EQ(rebuilt.at(2).lower, first.at(2).lower);
}

TEST(HomogeneousRadius, Examples) {
  auto k1 = homogeneous_bohr_radius(1, 1.0, BoundInterval::exact(1.0));
  EXPECT_EQ(k1.lo, 1.0);
  EXPECT_EQ(k1.hi, 1.0);
  EXPECT_EQ(k1.status, BoundStatus::Certified);

  const double r3 = std::sqrt(3.0);
  auto k2 = homogeneous_bohr_radius(2, 1.0, BoundInterval{r3, r3});
  EXPECT_TRUE(k2.contains(std::pow(3.0, -0.25)));
  EXPECT_NEAR(k2.mid(), 0.7598, 1e-4);

  auto clamped = homogeneous_bohr_radius(2, 2.0, BoundInterval::exact(1.0));
  EXPECT_EQ(clamped.hi, 1.0);
  EXPECT_EQ(clamped.status, BoundStatus::Clamped);

  EXPECT_THROW(homogeneous_bohr_radius(2, 0.5, BoundInterval::exact(1.0)), std::invalid_argument);
  EXPECT_THROW(homogeneous_bohr_radius(2, 1.0, BoundInterval::exact(0.5)), std::invalid_argument);
}

TEST(GammaCapital, Examples) {
  auto one = gamma_capital(trivial_table(5, SpaceSpec::scalar(1, kInf)));
  EXPECT_EQ(one.lo, 1.0);
  EXPECT_EQ(one.hi, 1.0);

  // direct scan of sqrt(N_m(2))^{1/m} = (m+1)^{1/(2m)}; m = 1 enters as S(1, n) = 1
  double scan = 1.0;
  for (int m = 2; m <= 200; ++m) scan = std::max(scan, std::pow(m + 1.0, 1.0 / (2.0 * m)));
  auto g2 = gamma_capital(trivial_table(6, SpaceSpec::scalar(2, kInf)));
  EXPECT_GE(g2.lo, 1.0);
  EXPECT_GE(g2.hi, scan);
  EXPECT_NEAR(g2.hi, scan, 1e-9);

  for (std::size_t n : {3, 5, 10}) {
    auto g = gamma_capital(trivial_table(4, SpaceSpec::scalar(n, kInf)));
    EXPECT_GE(g.lo, 1.0);
    EXPECT_LE(g.lo, g.hi);
  }
}
