// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "heat/fixtures.hpp"
#include "heat/laplacian.hpp"
#include "heat/oracle.hpp"
#include "heat/series.hpp"

using namespace heat;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ApplyLaplacianLattice(benchmark::State& state) {
  Lattice l(2);
  std::mt19937_64 rng(1);
  const auto support = ball(l, l.root(), static_cast<int>(state.range(1)));
  std::vector<double> values;
  for (std::size_t i = 0; i < support.size(); ++i) values.push_back(uniform_real(rng, -1, 1));
  const LocalFunction<double> f(support, values);
  for (auto _ : state) benchmark::DoNotOptimize(apply_laplacian(l, f, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(support.size()));
  label(state);
}
BENCHMARK(BM_ApplyLaplacianLattice)->ArgsProduct({{0, 1}, {50, 150}})->Unit(benchmark::kMillisecond);

void BM_Matvec(benchmark::State& state) {
  const auto op = dense_laplacian<double>(*random_weighted_graph(static_cast<int>(state.range(1)), 3000, 2));
  std::vector<double> v(op.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(matvec(op.matrix, std::span<const double>(v), mode(state)));
  label(state);
}
BENCHMARK(BM_Matvec)->ArgsProduct({{0, 1}, {500, 2000}})->Unit(benchmark::kMicrosecond);

void BM_Matmul(benchmark::State& state) {
  const auto op = dense_laplacian<double>(*random_weighted_graph(static_cast<int>(state.range(1)), 1000, 3));
  for (auto _ : state) benchmark::DoNotOptimize(matmul(op.matrix, op.matrix, mode(state)));
  label(state);
}
BENCHMARK(BM_Matmul)->ArgsProduct({{0, 1}, {200, 400}})->Unit(benchmark::kMillisecond);

void BM_EvaluateGrid(benchmark::State& state) {
  SeriesSolution s(std::make_shared<Lattice>(2), LocalFunction<double>::delta(vertex(0)));
  const auto vs = ball(s.graph(), s.graph().root(), 10);
  const std::vector<double> ts{-0.3, -0.2, -0.1, 0.1, 0.2, 0.3};
  s.coefficients().at(60);  // warm the coefficient table outside the timing loop
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(s, vs, ts, mode(state)));
  label(state);
}
BENCHMARK(BM_EvaluateGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
