#include <benchmark/benchmark.h>

#include "ffapprox/badset.hpp"
#include "ffapprox/bestapprox.hpp"
#include "ffapprox/dynamics.hpp"
#include "ffapprox/fixtures.hpp"

using namespace ffapprox;

static void BM_SuccessiveMinima(benchmark::State& st) {
  fixtures::Rng rng(1);
  FieldPtr f = Field::prime(3);
  const auto d = static_cast<std::size_t>(st.range(0));
  std::vector<LaurentMatrix> bs;
  for (int i = 0; i < 16; ++i) bs.push_back(fixtures::random_lattice(f, d, 4, rng, 2));
  std::size_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(successive_minima(bs[k++ % bs.size()]));
}
BENCHMARK(BM_SuccessiveMinima)->Arg(2)->Arg(3)->Arg(4);

static void BM_BestApproxAlphaQuad(benchmark::State& st) {
  FieldPtr f = Field::prime(2);
  LaurentMatrix A = fixtures::alpha_quad(f, 1024);
  const WeightedNormContext ctx({1}, {1});
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_best_approx(A, ctx, Rational(st.range(0))));
}
BENCHMARK(BM_BestApproxAlphaQuad)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BestApproxWeighted(benchmark::State& st) {
  fixtures::Rng rng(2);
  FieldPtr f = Field::prime(2);
  const WeightedNormContext ctx({2}, {1, 1});
  LaurentMatrix A = fixtures::random_series_matrix(f, 1, 2, 512, rng);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_best_approx(A, ctx, Rational(st.range(0))));
}
BENCHMARK(BM_BestApproxWeighted)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_DaniTrajectory(benchmark::State& st) {
  FieldPtr f = Field::prime(2);
  LaurentMatrix A = fixtures::liouville(f, 1000);
  const WeightedNormContext ctx({1}, {1});
  for (auto _ : st) benchmark::DoNotOptimize(dani_trajectory(A, ctx, Rational(-2), 64));
}
BENCHMARK(BM_DaniTrajectory)->Unit(benchmark::kMillisecond);

static void BM_CantorLevels(benchmark::State& st) {
  FieldPtr f = Field::prime(2);
  std::vector<PolyVec> ys;
  for (int k = 1; k <= 6; ++k) ys.push_back({Poly::monomial(f, f->one(), 4 * k) + Poly::Z(f)});
  const auto levels = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_cantor(f, ys, {1}, -4, levels));
}
BENCHMARK(BM_CantorLevels)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
