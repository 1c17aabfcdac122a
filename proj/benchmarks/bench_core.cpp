#include "hdmt/baselines.hpp"
#include "hdmt/mpt.hpp"

#include <benchmark/benchmark.h>

using namespace hdmt;

namespace {

DataMatrix draw(int n, int p, double c, std::uint64_t seed = 1) {
  Rng rng(seed);
  const MultivariateSampler sampler(CovarianceSpec::compound_symmetry(0.5), p);
  return sampler.draw(n, MeanSpec::sparse_ones(10, c).realize(p), Distribution::gaussian(), rng);
}

void BM_EstimateDirection(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const DataMatrix data = draw(20, p, 0.5);
  const QuadraticModel model = QuadraticModel::from_sample(data.values());
  const PenaltySpec pen = PenaltySpec::scad(default_lambda(20, p));
  int iterations = 0;
  for (auto _ : state) {
    const auto est = estimate_direction(model, pen);
    iterations = est.iterations_used;
    benchmark::DoNotOptimize(est.w_hat.data());
  }
  state.counters["solver_iterations"] = iterations;
}
BENCHMARK(BM_EstimateDirection)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Mpt(benchmark::State& state) {
  const DataMatrix data = draw(40, static_cast<int>(state.range(0)), 0.0);
  MptOptions opts;
  opts.m = 40;
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mpt(data, opts, SeedPolicy{7}, rep++).m_stat);
}
BENCHMARK(BM_Mpt)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Sampler(benchmark::State& state) {
  const int p = static_cast<int>(state.range(1));
  const CovarianceSpec spec = state.range(0) == 0 ? CovarianceSpec::autocorrelation(0.5)
                                                  : CovarianceSpec::compound_symmetry(0.5);
  const MultivariateSampler sampler(spec, p);
  const Vector mu = Vector::Zero(p);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(40, mu, Distribution::gaussian(), rng).values().data());
}
BENCHMARK(BM_Sampler)->Args({0, 1000})->Args({1, 1000})->Unit(benchmark::kMicrosecond);

void BM_DenseCholeskySampler(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix L = cholesky_factor(build_covariance(CovarianceSpec::autocorrelation(0.5), p));
  const Vector mu = Vector::Zero(p);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_gaussian(40, mu, L, rng).values().data());
}
BENCHMARK(BM_DenseCholeskySampler)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Baselines(benchmark::State& state) {
  const DataMatrix data = draw(40, 1000, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cq_test(data, 0.05).p_value);
    benchmark::DoNotOptimize(clx_test(data, 0.05).p_value);
  }
}
BENCHMARK(BM_Baselines)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
