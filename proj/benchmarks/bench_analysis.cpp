#include <benchmark/benchmark.h>

#include <random>

#include "qnet/analysis/readout.hpp"
#include "qnet/analysis/swap_fit.hpp"
#include "qnet/protocols/simulation.hpp"

using namespace qnet;

static void BM_SwapFit(benchmark::State& state) {
  const double omega = AngularFrequency::mhz(5.04).value();
  const auto t = linear_grid(0.0, 10 * us, static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.005);
  std::vector<double> p;
  for (double x : t) p.push_back(swap_population_model(x, omega, 14 * us, 0.0, 0.98) + noise(rng));
  for (auto _ : state) benchmark::DoNotOptimize(fit_swap_decay(t, p));
}
BENCHMARK(BM_SwapFit)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

static void BM_ReadoutCorrection(benchmark::State& state) {
  const ReadoutModel model = ReadoutModel::reference_device();
  Eigen::VectorXd p(4);
  p << 0.1, 0.4, 0.4, 0.1;
  std::mt19937_64 rng(2);
  const auto counts = sample_readout(model, p, 2000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(correct_readout(counts, model));
}
BENCHMARK(BM_ReadoutCorrection);
BENCHMARK_MAIN();
