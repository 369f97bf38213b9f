#include <benchmark/benchmark.h>

#include "chainwish/power_functions.hpp"
#include "chainwish/wishart_p.hpp"
#include "chainwish/wishart_q.hpp"

using namespace chainwish;

namespace {

TridiagSym test_y(int n) {
  TridiagSym y(n);
  y.diag().setConstant(2.0);
  y.off().setConstant(-0.6);
  return y;
}

IncompleteSym test_x(int n) {
  IncompleteSym x(n);
  x.diag().setConstant(1.5);
  x.off().setConstant(0.4);
  return x;
}

ShapeParams test_shape(int n, double base) {
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = base + 0.1 * (i % 4);
  return {(n + 1) / 2, s};
}

void BM_LogPowerP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TridiagSym y = test_y(n);
  const ShapeParams p = test_shape(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_power_p(p, y));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LogPowerP)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_LogPowerQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IncompleteSym x = test_x(n);
  const ShapeParams p = test_shape(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_power_q(p, x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LogPowerQ)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_MeanQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TridiagSym y = test_y(n);
  const ShapeParams p = test_shape(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mean_map_q(p, y));
}
BENCHMARK(BM_MeanQ)->RangeMultiplier(4)->Range(4, 256);

void BM_InverseMeanQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ShapeParams p = test_shape(n, 1.0);
  const IncompleteSym m = mean_map_q(p, test_y(n));
  for (auto _ : state) benchmark::DoNotOptimize(inverse_mean_q(p, m));
}
BENCHMARK(BM_InverseMeanQ)->RangeMultiplier(4)->Range(4, 256);

void BM_SampleQ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WishartQ w(test_shape(n, 1.0), test_y(n));
  Rng rng = make_stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(w.sample(rng));
}
BENCHMARK(BM_SampleQ)->RangeMultiplier(4)->Range(4, 1024);

void BM_SampleQuadratic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd sigma = Eigen::VectorXd::Ones(n);
  sigma[(n + 1) / 2 - 1] = 3.0;
  const QuadraticSampler q = QuadraticSampler::from_sigma(sigma, (n + 1) / 2, test_y(n));
  Rng rng = make_stream(2);
  for (auto _ : state) benchmark::DoNotOptimize(q.sample(rng));
}
BENCHMARK(BM_SampleQuadratic)->RangeMultiplier(4)->Range(4, 64);

void BM_SampleP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WishartP w(test_shape(n, 0.2), test_x(n));
  Rng rng = make_stream(3);
  for (auto _ : state) benchmark::DoNotOptimize(w.sample(rng));
}
BENCHMARK(BM_SampleP)->RangeMultiplier(4)->Range(4, 1024);

void BM_MomentQ(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const int n = 6;
  const WishartQ w(test_shape(n, 1.0), test_y(n));
  std::vector<TridiagSym> z(static_cast<std::size_t>(order), test_y(n));
  for (auto _ : state) benchmark::DoNotOptimize(w.moment(z));
}
BENCHMARK(BM_MomentQ)->DenseRange(1, 5);

}  // namespace
BENCHMARK_MAIN();
