#include <benchmark/benchmark.h>

#include "iatails/coupled.hpp"
#include "iatails/ia.hpp"
#include "iatails/mle.hpp"
#include "iatails/sampler.hpp"

using namespace iatails;

namespace {

const CoupledParams kGpd = CoupledParams::gpd(0.5, 1.0);
const CoupledParams kGauss = CoupledParams::gauss(0.5, 1.0);

void BM_pdf_gpd(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf(x, kGpd));
    x += 1e-6;
  }
}
BENCHMARK(BM_pdf_gpd);

void BM_cdf_gauss(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(x, kGauss));
    x += 1e-6;
  }
}
BENCHMARK(BM_cdf_gauss);

void BM_quantile_gauss(benchmark::State& state) {
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantile(u, kGauss));
    u = u < 0.99 ? u + 1e-6 : 0.1;
  }
}
BENCHMARK(BM_quantile_gauss);

void BM_sample(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_coupled(n, kGpd, RandomStream(seed++, 0)));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sample)->Arg(1000)->Arg(10000);

void BM_ia_fit(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SampleSet s = sample_coupled(n, kGpd, RandomStream(7, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ia_fit(s.values, 1, IaMethod::ia_gm, IAConfig{}, RandomStream(8, 0)));
  }
}
BENCHMARK(BM_ia_fit)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ml_fit(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const SampleSet s = sample_coupled(n, kGpd, RandomStream(9, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_fit(s.values, 1));
  }
}
BENCHMARK(BM_ml_fit)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
