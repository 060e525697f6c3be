#include <array>
#include <vector>

#include <benchmark/benchmark.h>

#include "ndpc/cognitive.hpp"
#include "ndpc/error_exponent.hpp"
#include "ndpc/gaussian.hpp"
#include "ndpc/mc_oracle.hpp"
#include "ndpc/noisy_dpc.hpp"

namespace {

void BM_Capacity(benchmark::State& state) {
  ndpc::DirtyPaperChannel ch{10.0, 5.0, 1.0, 2.0, 3.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ch);
    benchmark::DoNotOptimize(ndpc::capacity(ch));
  }
}
BENCHMARK(BM_Capacity);

void BM_DeterminantCapacity(benchmark::State& state) {
  ndpc::DirtyPaperChannel ch{10.0, 5.0, 1.0, 2.0, 3.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ch);
    benchmark::DoNotOptimize(ndpc::oracle::determinant_capacity(ch));
  }
}
BENCHMARK(BM_DeterminantCapacity);

void BM_Determinant(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::vector<double> m(dim * dim, 0.25);
  for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 2.0 + static_cast<double>(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.data());
    benchmark::DoNotOptimize(ndpc::determinant(m, dim));
  }
}
BENCHMARK(BM_Determinant)->DenseRange(2, 8, 2);

void BM_ExponentClosedForm(benchmark::State& state) {
  ndpc::DecodeSetting s{10.0, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s);
    benchmark::DoNotOptimize(ndpc::random_coding_exponent(s));
  }
}
BENCHMARK(BM_ExponentClosedForm);

void BM_ExponentSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ndpc::oracle::gallager_exponent_search(10.0, 0.3));
}
BENCHMARK(BM_ExponentSearch);

void BM_AchievableRate(benchmark::State& state) {
  ndpc::CognitiveNetwork net;
  net.gain_ac = 1.2;
  net.gain_ad = 0.7;
  net.block_length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ndpc::achievable_rate(net));
}
BENCHMARK(BM_AchievableRate)->Arg(100)->Arg(400);

void BM_SampleCovariance(benchmark::State& state) {
  const ndpc::DirtyPaperChannel ch{1.0, 1.0, 1.0, 1.0, 1.0};
  const ndpc::CovarianceMatrix model = ndpc::oracle::theorem_covariance(ch, 1.0 / 7.0);
  const ndpc::oracle::SampleSpec spec{42, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ndpc::oracle::sample_covariance(model, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleCovariance)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
