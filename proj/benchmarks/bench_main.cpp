#include <benchmark/benchmark.h>

#include "fracop/expression.hpp"
#include "fracop/fractal_operator.hpp"
#include "fracop/norms.hpp"
#include "fracop/rb_engine.hpp"

using namespace fracop;

namespace {

IfsSpec reference_spec(int level, const SpaceSpec& space = SpaceSpec::bounded()) {
  const Grid grid = Grid::make(0.0, 1.0, level);
  const int depth = space.derivative_order();
  return IfsSpec::create(Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant({0.4, 0.4}),
                         Expression::parse("x^2").sample(grid, depth),
                         Expression::parse("x").sample(grid, depth), space);
}

FractalTemplate reference_template(int level, double alpha) {
  return FractalTemplate{Partition::build({0.0, 0.5, 1.0}), ScalingProfile::constant({alpha, alpha}),
                         LinearBaseOperator::endpoint_line(), SpaceSpec::bounded(),
                         Grid::make(0.0, 1.0, level)};
}

void BM_ApplyRb(benchmark::State& state) {
  const IfsSpec spec = reference_spec(static_cast<int>(state.range(0)));
  const RbPlan plan = RbPlan::build(spec.partition(), spec.scaling(), spec.grid());
  GridFunction g = spec.seed();
  for (auto _ : state) {
    g = plan.apply(spec.seed(), spec.base(), g);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.grid().size()));
}
BENCHMARK(BM_ApplyRb)->DenseRange(10, 16, 2);

void BM_FixedPoint(benchmark::State& state) {
  const IfsSpec spec = reference_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(spec));
}
BENCHMARK(BM_FixedPoint)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

void BM_SobolevNorm(benchmark::State& state) {
  const Grid grid = Grid::make(0.0, 1.0, static_cast<int>(state.range(0)));
  const GridFunction g = Expression::parse("sin(3*x) + x^2").sample(grid);
  const SpaceSpec space = SpaceSpec::sobolev(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(norm(space, g));
}
BENCHMARK(BM_SobolevNorm)->DenseRange(10, 16, 2);

void BM_HoelderSeminorm(benchmark::State& state) {
  const Grid grid = Grid::make(0.0, 1.0, 12);
  const GridFunction g = Expression::parse("abs(x - 0.3)^0.5").sample(grid);
  for (auto _ : state) benchmark::DoNotOptimize(hoelder_seminorm(g, 0.5));
}
BENCHMARK(BM_HoelderSeminorm)->Unit(benchmark::kMillisecond);

void BM_NeumannInverse(benchmark::State& state) {
  const FractalOperator op(reference_template(12, 0.1));
  const GridFunction g = Expression::parse("sin(pi*x)").sample(op.tmpl().grid);
  for (auto _ : state) benchmark::DoNotOptimize(neumann_inverse(op, g));
}
BENCHMARK(BM_NeumannInverse)->Unit(benchmark::kMillisecond);

void BM_ChaosGame(benchmark::State& state) {
  const IfsSpec spec = reference_spec(12);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chaos_game(spec, n, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChaosGame)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
