#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include <sixlasso/link.hpp>
#include <sixlasso/model.hpp>
#include <sixlasso/projection.hpp>
#include <sixlasso/solver.hpp>

using namespace sixlasso;

namespace {

Vector gaussian(Eigen::Index size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(size);
  for (auto& x : v) x = normal(rng);
  return v;
}

void BM_ProjectL1(benchmark::State& state) {
  const Vector v = gaussian(state.range(0), 1);
  const double radius = 0.1 * v.lpNorm<1>();
  for (auto _ : state) benchmark::DoNotOptimize(project_l1_ball(v, radius));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectL1)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_ComputeLambdaQuadrature(benchmark::State& state) {
  const auto link = LinkFunction::logistic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_lambda(link, LambdaMethod::Quadrature, state.range(0)));
  }
}
BENCHMARK(BM_ComputeLambdaQuadrature)->Arg(32)->Arg(64)->Arg(128);

void BM_GenerateDataset(benchmark::State& state) {
  const auto signal = make_signal(1200, 10, SignalMode::RandomMagnitude, 3);
  const auto link = LinkFunction::logistic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_dataset(signal, state.range(0), link, 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1200);
}
BENCHMARK(BM_GenerateDataset)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitLasso(benchmark::State& state) {
  const auto signal = make_signal(1200, 10, SignalMode::RandomMagnitude, 3);
  const auto data = generate_dataset(signal, state.range(0), LinkFunction::logistic(), 7);
  SolverConfig config;
  config.step_rule = state.range(1) ? StepRule::Backtracking : StepRule::FixedLipschitz;
  for (auto _ : state) {
    const auto fit = fit_lasso(data, std::sqrt(10.0), config);
    state.counters["iterations"] = static_cast<double>(fit.iterations);
  }
}
BENCHMARK(BM_FitLasso)
    ->Args({200, 0})
    ->Args({1000, 0})
    ->Args({3000, 0})
    ->Args({1000, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
