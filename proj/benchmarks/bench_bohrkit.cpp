#include <benchmark/benchmark.h>

#include <random>

#include "bohr/multiindex.hpp"
#include "bohr/polynorms.hpp"
#include "bohr/radii.hpp"
#include "bohr/sidon.hpp"
#include "bohr/verify.hpp"

using namespace bohr;

namespace {

HomogeneousPolynomial random_poly(std::uint32_t m, const SpaceSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<CVector> dense(count_multi_indices(m, spec.domain_dim), CVector(spec.codomain_dim));
  for (auto& v : dense)
    for (auto& x : v) x = {g(rng), g(rng)};
  return HomogeneousPolynomial::from_dense(m, spec, dense);
}

void BM_EvalSeries(benchmark::State& state) {
  SeriesSpec s{static_cast<std::size_t>(state.range(0)), SqrtNCoefficients{}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(eval_series(s, 0.25, 1e-12));
}
BENCHMARK(BM_EvalSeries)->Arg(2)->Arg(10)->Arg(50);

void BM_SolveRoot(benchmark::State& state) {
  SeriesSpec s{static_cast<std::size_t>(state.range(0)), SqrtNCoefficients{}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_root(s, 1e-10));
}
BENCHMARK(BM_SolveRoot)->Arg(2)->Arg(10)->Arg(30);

void BM_NormSupCertified(benchmark::State& state) {
  auto q = random_poly(3, SpaceSpec::scalar(static_cast<std::size_t>(state.range(0)), Exponent::infinity()), 1);
  for (auto _ : state) benchmark::DoNotOptimize(norm_sup_certified(q, 64));
}
BENCHMARK(BM_NormSupCertified)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_NormSupHeuristic(benchmark::State& state) {
  auto q = random_poly(3, SpaceSpec{3, Exponent::finite(2.0), 2, Exponent::finite(2.0)}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(norm_sup_heuristic(q, static_cast<unsigned>(state.range(0)), 0));
}
BENCHMARK(BM_NormSupHeuristic)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_NormOneFiniteQ(benchmark::State& state) {
  auto q = random_poly(3, SpaceSpec::scalar(3, Exponent::finite(3.0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(norm_one(q));
}
BENCHMARK(BM_NormOneFiniteQ)->Unit(benchmark::kMicrosecond);

void BM_SidonSearch(benchmark::State& state) {
  const auto spec = SpaceSpec::scalar(2, Exponent::infinity());
  for (auto _ : state) benchmark::DoNotOptimize(sidon_bounds(2, spec, static_cast<std::uint64_t>(state.range(0)), 0));
}
BENCHMARK(BM_SidonSearch)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MoebiusCheck(benchmark::State& state) {
  auto f = moebius_family(0.9, 60);
  for (auto _ : state) benchmark::DoNotOptimize(check_bohr_sample(f, 1.0 / 3.0, 1.0, DeclaredSup{1.0}));
}
BENCHMARK(BM_MoebiusCheck);

}  // namespace

BENCHMARK_MAIN();
