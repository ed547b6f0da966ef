#include <benchmark/benchmark.h>

#include "qwd/cost.hpp"
#include "qwd/divergence.hpp"
#include "qwd/hermitian.hpp"
#include "qwd/rng.hpp"
#include "qwd/transport.hpp"

using namespace qwd;

namespace {

void BM_Eigh(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  const HermitianMatrix h = random_observable(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(9)->Arg(16)->Arg(25);

void BM_SolvePrimal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(2, 0);
  const DensityMatrix rho = random_state(d, d, rng);
  const DensityMatrix omega = random_state(d, d, rng);
  const CostOperator c = build_cost(random_observables(d, 3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(solve_primal(rho, omega, c));
}
BENCHMARK(BM_SolvePrimal)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SolveDual(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(3, 0);
  const DensityMatrix rho = random_state(d, d, rng);
  const DensityMatrix omega = random_state(d, d, rng);
  const CostOperator c = build_cost(random_observables(d, 3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(solve_dual(rho, omega, c));
}
BENCHMARK(BM_SolveDual)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Divergence(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(4, 0);
  const DensityMatrix rho = random_state(d, d, rng);
  const DensityMatrix omega = random_state(d, d, rng);
  const CostOperator c = build_cost(random_observables(d, 3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(divergence(rho, omega, c));
}
BENCHMARK(BM_Divergence)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
