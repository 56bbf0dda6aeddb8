#include <benchmark/benchmark.h>

#include "qnet/model/hamiltonians.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/lindblad.hpp"
#include "qnet/quantum/propagator.hpp"

using namespace qnet;

namespace {

NetworkModel with_bus_dim(int dim) {
  NetworkModel m = NetworkModel::reference_device();
  m.bus.dim = dim;
  return m;
}

}  // namespace

static void BM_StaticChannel(benchmark::State& state) {
  const NetworkModel m = with_bus_dim(static_cast<int>(state.range(0)));
  const Operator h = build_raman_hamiltonian(m, DriveConfig::resonant(AngularFrequency::mhz(5.04))).static_part();
  const auto collapse = collapse_operators(m);
  for (auto _ : state) benchmark::DoNotOptimize(static_channel(h, collapse, 140 * ns));
  state.SetLabel("dim " + std::to_string(m.space().dimension()));
}
BENCHMARK(BM_StaticChannel)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ShapedSwapIntegration(benchmark::State& state) {
  const NetworkModel m = with_bus_dim(3);
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::mhz(5.0));
  drive.envelope1 = drive.envelope2 = PulseShape::padded(142 * ns, 4 * ns, 40 * ns);
  const TimeDependentHamiltonian H = build_raman_hamiltonian(m, drive);
  const auto collapse = collapse_operators(m);
  const DensityMatrix rho0 = excited_state(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_to(H, collapse, rho0, 0.0, drive.envelope1->total_s));
}
BENCHMARK(BM_ShapedSwapIntegration)->Unit(benchmark::kMillisecond);

static void BM_RamanTrajectory(benchmark::State& state) {
  const NetworkModel m = with_bus_dim(3);
  const auto drive = DriveConfig::resonant(AngularFrequency::mhz(5.04));
  const auto times = linear_grid(0.0, 10 * us, static_cast<std::size_t>(state.range(0)));
  const DensityMatrix rho0 = excited_state(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_raman(m, drive, rho0, times));
}
BENCHMARK(BM_RamanTrajectory)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
