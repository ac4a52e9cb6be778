#include <benchmark/benchmark.h>

#include "bjet/extension.hpp"

using namespace bjet;

namespace {

ModelContext disc_context() {
  ModelContext ctx;
  ctx.domain = DomainSpec::unit_disc();
  ctx.sub = {1};
  ctx.green = {1, {}};
  return ctx;
}

ModelContext polydisc_context() {
  ModelContext ctx;
  ctx.domain = DomainSpec::polydisc({1.0, 1.0});
  ctx.sub = {1};
  ctx.green = {1, {}};
  return ctx;
}

}  // namespace

static void BM_GramDisc(benchmark::State& state) {
  const auto ctx = disc_context();
  const auto trunc = BasisTruncation::make(1, 1, 2, static_cast<int>(state.range(0)));
  QuadratureConfig cfg;
  for (auto _ : state) {
    auto gm = gram(trunc, ctx, {-1.0, 2.0, 2}, cfg);
    benchmark::DoNotOptimize(gm.entries.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GramDisc)->Arg(4)->Arg(8)->Arg(12)->Complexity();

static void BM_GramBidisc(benchmark::State& state) {
  const auto ctx = polydisc_context();
  const auto trunc = BasisTruncation::make(2, 1, 2, static_cast<int>(state.range(0)));
  QuadratureConfig cfg;
  for (auto _ : state) {
    auto gm = gram(trunc, ctx, {0.0, 0.0, 2}, cfg);
    benchmark::DoNotOptimize(gm.entries.data());
  }
}
BENCHMARK(BM_GramBidisc)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ShellMetric(benchmark::State& state) {
  const auto ctx = disc_context();
  JetElement e;
  e.k = 1;
  e.coeffs[MultiIndex({1})] = Complex{1.0, 0.0};
  QuadratureConfig cfg;
  const double ts[] = {-10.0, -20.0, -30.0};
  for (auto _ : state) {
    auto mv = metric_shell(e, e, ctx, cfg, ts);
    benchmark::DoNotOptimize(mv.value);
  }
}
BENCHMARK(BM_ShellMetric)->Unit(benchmark::kMillisecond);

static void BM_MinimalExtension(benchmark::State& state) {
  ExtensionProblem prob;
  prob.ctx = polydisc_context();
  prob.jet.n = 2;
  prob.jet.k = 1;
  prob.jet.p = 2;
  prob.jet.components[MultiIndex({1})] = CoeffMap{{MultiIndex({0}), Complex{1, 0}}};
  prob.trunc = BasisTruncation::make(2, 1, 2, 6);
  QuadratureConfig cfg;
  for (auto _ : state) {
    auto res = minimal_extension(prob, cfg);
    benchmark::DoNotOptimize(res.primal_norm_sq);
  }
}
BENCHMARK(BM_MinimalExtension)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
