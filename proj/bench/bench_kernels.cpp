// Serial reference vs OpenMP kernel timings. Run with OMP_NUM_THREADS set to
// the worker count of interest.

#include <benchmark/benchmark.h>

#include <random>

#include "cubelens/cube_sets.hpp"
#include "cubelens/divisor_windows.hpp"
#include "cubelens/l4_analysis.hpp"

using namespace cubelens;

namespace {

std::vector<Integer> cube_set(unsigned long start, unsigned long length) {
  const auto values = elements(CubeInterval(Natural(start), Natural(length)));
  return {values.begin(), values.end()};
}

CoeffPoly random_poly(std::size_t terms) {
  std::mt19937_64 rng(99);
  CoeffPoly f;
  while (f.size() < terms) {
    const long n = static_cast<long>(rng() % 2'000'001) - 1'000'000;
    f.set(Integer(n), Gaussian{Ratio(static_cast<long>(rng() % 1000) + 1, 7), Ratio(1, 3)});
  }
  return f;
}

void BM_rep_profile_openmp(benchmark::State& state) {
  const auto set = cube_set(1'000'000, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rep_profile(set));
}

void BM_rep_profile_serial(benchmark::State& state) {
  const auto set = cube_set(1'000'000, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::rep_profile(set));
}

void BM_is_sidon_openmp(benchmark::State& state) {
  const auto set = cube_set(1'000'000, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_sidon(set));
}

void BM_is_sidon_serial(benchmark::State& state) {
  const auto set = cube_set(1'000'000, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::is_sidon(set));
}

void BM_sidon_sweep_openmp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sidon_sweep(1, state.range(0)));
}

void BM_sidon_sweep_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::sidon_sweep(1, state.range(0)));
}

void BM_l4_fourth_openmp(benchmark::State& state) {
  const CoeffPoly f = random_poly(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(l4_fourth(f));
}

void BM_l4_fourth_serial(benchmark::State& state) {
  const CoeffPoly f = random_poly(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::l4_fourth(f));
}

void BM_thm22_scan_openmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(thm22_scan(2, state.range(0), Ratio(1, 3), Ratio(1, 10)));
  }
}

void BM_thm22_scan_serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::thm22_scan(2, state.range(0), Ratio(1, 3), Ratio(1, 10)));
  }
}

void BM_rep_bound_check_openmp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rep_bound_check(Natural(10'000), Natural(state.range(0))));
  }
}

void BM_rep_bound_check_serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::rep_bound_check(Natural(10'000), Natural(state.range(0))));
  }
}

}  // namespace

BENCHMARK(BM_rep_profile_openmp)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rep_profile_serial)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_sidon_openmp)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_is_sidon_serial)->Arg(200)->Arg(700)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sidon_sweep_openmp)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sidon_sweep_serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_l4_fourth_openmp)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_l4_fourth_serial)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_thm22_scan_openmp)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_thm22_scan_serial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rep_bound_check_openmp)->Arg(185)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rep_bound_check_serial)->Arg(185)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
