#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lehn/catalog.hpp"
#include "lehn/dsl.hpp"
#include "lehn/runner.hpp"
#include "lehn/series.hpp"

using namespace lehn;

namespace {

Series random_series(Var v, int order, std::uint64_t seed,
                     bool unit_constant) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i)
    c.emplace_back(static_cast<long>(rng() % 19) - 9,
                   static_cast<long>(rng() % 6) + 1);
  if (unit_constant) c[0] = Rational(1);
  return Series::from_coefficients(v, order, std::move(c));
}

void BM_multiply(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series a = random_series(Var::w, order, 11, false);
  Series b = random_series(Var::w, order, 22, false);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_multiply)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_divide(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series a = random_series(Var::w, order, 33, false);
  Series b = random_series(Var::w, order, 44, true);
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(BM_divide)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_pow_rational(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series f = random_series(Var::t, order, 55, true);
  Rational e(-7, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pow(f, e));
}
BENCHMARK(BM_pow_rational)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_compose(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series f = random_series(Var::z, order, 66, false);
  Series g = random_series(Var::w, order, 77, false);
  std::vector<Rational> c = g.coefficients();
  c[0] = Rational(0);
  if (c[1].is_zero()) c[1] = Rational(1);
  g = Series::from_coefficients(Var::w, order, std::move(c));
  for (auto _ : state) benchmark::DoNotOptimize(compose(f, g));
}
BENCHMARK(BM_compose)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_revert(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series z = lehn_z_of_w(order);
  for (auto _ : state) benchmark::DoNotOptimize(revert(z, Var::z));
}
BENCHMARK(BM_revert)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_surface_series(benchmark::State& state) {
  SurfaceInvariants si(6, 2, 4, -1);
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lehn_rhs(si, order));
}
BENCHMARK(BM_surface_series)->Arg(12)->Arg(24);

void BM_universal_t(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(universal_series_t(order));
}
BENCHMARK(BM_universal_t)->Arg(15)->Arg(30);

void BM_parse_manifest(benchmark::State& state) {
  std::string text = default_manifest();
  for (auto _ : state)
    benchmark::DoNotOptimize(dsl::parse_manifest(text));
}
BENCHMARK(BM_parse_manifest);

void BM_suite_lehn(benchmark::State& state) {
  for (auto _ : state) {
    SuiteReport r = run_suite("lehn");
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_suite_lehn)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
