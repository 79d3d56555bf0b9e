// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sketchfeas/kernels.hpp"
#include "sketchfeas/numerics.hpp"
#include "sketchfeas/projector.hpp"
#include "sketchfeas/rng.hpp"

namespace {

using namespace sketchfeas;

// T·A for a k×m projector and an m×n instance; args are k, m, n.
template <bool Parallel>
void BM_Gemm(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const rng::CounterStream stream(11);
  std::vector<double> left(k * m), right(m * n), out(k * n);
  for (std::size_t i = 0; i < left.size(); ++i) left[i] = stream.normal(i);
  for (std::size_t i = 0; i < right.size(); ++i) right[i] = stream.uniform(left.size() + i);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::gemm({k, m, n}, left, right, out);
    } else {
      kernels::serial::gemm({k, m, n}, left, right, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["GFLOP/s"] = benchmark::Counter(2.0 * static_cast<double>(k * m * n),
                                                 benchmark::Counter::kIsIterationInvariantRate,
                                                 benchmark::Counter::kIs1000);
}

// Gaussian projector entries filled in blocks; arg is the entry count.
template <bool Parallel>
void BM_NormalFill(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const rng::CounterStream stream(12);
  std::vector<double> entries(count);
  auto fill = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) entries[i] = stream.normal(i);
  };
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::for_each_block(count, 4096, fill);
    } else {
      kernels::serial::for_each_block(count, 4096, fill);
    }
    benchmark::DoNotOptimize(entries.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(count));
}

// Distortion trials: sample a k×m Gaussian sketch, apply it to a fixed unit
// vector, test the norm. Args are k, trials.
template <bool Parallel>
void BM_DistortionTrials(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto trials = static_cast<std::size_t>(state.range(1));
  const std::size_t m = k;
  const DenseVector x = DenseVector::unit(m, 0);
  auto trial = [&](std::size_t t) {
    const double norm =
        two_norm(sample_and_apply(ProjectorFamily::Gaussian, k, m, rng::derive_seed(13, t), x));
    return std::abs(norm - 1.0) <= 0.2;
  };
  for (auto _ : state) {
    std::size_t hits = 0;
    if constexpr (Parallel) {
      hits = kernels::omp::count_successes(trials, trial);
    } else {
      hits = kernels::serial::count_successes(trials, trial);
    }
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(trials));
}

}  // namespace

BENCHMARK(BM_Gemm<false>)->Name("gemm/serial")->Args({15, 50, 100})->Args({60, 600, 1000})->Args({160, 800, 1600});
BENCHMARK(BM_Gemm<true>)->Name("gemm/omp")->Args({15, 50, 100})->Args({60, 600, 1000})->Args({160, 800, 1600})->UseRealTime();
BENCHMARK(BM_NormalFill<false>)->Name("normal_fill/serial")->Arg(36000)->Arg(1 << 20);
BENCHMARK(BM_NormalFill<true>)->Name("normal_fill/omp")->Arg(36000)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_DistortionTrials<false>)->Name("distortion_trials/serial")->Args({200, 1000});
BENCHMARK(BM_DistortionTrials<true>)->Name("distortion_trials/omp")->Args({200, 1000})->UseRealTime();

BENCHMARK_MAIN();
