#include <benchmark/benchmark.h>

#include <numbers>

#include "coherence/power.hpp"
#include "coherence/random.hpp"
#include "coherence/simulate.hpp"

using namespace coherence;

static void BM_Kron(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const ComplexMatrix a = haar_unitary(d, rng);
  const ComplexMatrix b = haar_unitary(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

static void BM_RelativeEntropyOfCoherence(benchmark::State& state) {
  const DensityMatrix rho = random_state(static_cast<int>(state.range(0)), StateKind::Mixed, 3);
  for (auto _ : state) benchmark::DoNotOptimize(relative_entropy_of_coherence(rho));
}
BENCHMARK(BM_RelativeEntropyOfCoherence)->Arg(2)->Arg(8)->Arg(32);

static void BM_CoherenceOfFormation(benchmark::State& state) {
  const DensityMatrix rho = random_state(static_cast<int>(state.range(0)), StateKind::Mixed, 5);
  ConvexRoofConfig cfg;
  cfg.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(coherence_of_formation(rho, cfg).value);
}
BENCHMARK(BM_CoherenceOfFormation)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_QubitCgen(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qubit_cgen(std::numbers::pi / 8).value);
}
BENCHMARK(BM_QubitCgen)->Unit(benchmark::kMicrosecond);

static void BM_TeleportSimulation(benchmark::State& state) {
  const KrausChannel t = random_channel(3, 3, 3, 7);
  for (auto _ : state) {
    const SimulationBundle b = build_teleport_sim(t);
    benchmark::DoNotOptimize(verify_simulation(b).pass);
  }
}
BENCHMARK(BM_TeleportSimulation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
