// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <vector>

#include "bernegger/exposure_core.hpp"
#include "bernegger/families.hpp"
#include "bernegger/kernels.hpp"

namespace {

using namespace bernegger;

const CensoredDistribution& power_exp() {
  static const CensoredDistribution dist =
      find_family("power-exp").distribution(std::vector<double>{1.4, 0.05, -1.0, 1.5});
  return dist;
}

std::vector<double> uncensored(std::size_t n) {
  std::vector<double> z = sample(power_exp(), n, 11);
  std::erase_if(z, [](double x) { return x >= 1.0; });
  return z;
}

template <auto Kernel>
void BM_log_density(benchmark::State& state) {
  const auto z = uncensored(static_cast<std::size_t>(state.range(0)));
  const RealFunction log_pdf = [](double x) { return power_exp().log_pdf(x); };
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(z, log_pdf));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(z.size()));
}

template <auto Kernel>
void BM_kde(benchmark::State& state) {
  const auto z = uncensored(static_cast<std::size_t>(state.range(0)));
  std::vector<double> grid(200);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = (i + 0.5) / grid.size();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(z, 0.02, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(z.size() * grid.size()));
}

template <auto Kernel>
void BM_sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(power_exp(), n, 5));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(BM_log_density<sum_log_density>)->Name("sum_log_density/omp")->Arg(50000)->Arg(500000);
BENCHMARK(BM_log_density<sum_log_density_serial>)->Name("sum_log_density/serial")->Arg(50000)->Arg(500000);
BENCHMARK(BM_kde<kde_evaluate>)->Name("kde_evaluate/omp")->Arg(50000);
BENCHMARK(BM_kde<kde_evaluate_serial>)->Name("kde_evaluate/serial")->Arg(50000);
BENCHMARK(BM_sample<sample>)->Name("sample/omp")->Arg(50000);
BENCHMARK(BM_sample<sample_serial>)->Name("sample/serial")->Arg(50000);

BENCHMARK_MAIN();
