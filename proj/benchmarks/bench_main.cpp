#include <benchmark/benchmark.h>

#include "seedshare/economics.hpp"
#include "seedshare/fluid.hpp"
#include "seedshare/scenario.hpp"
#include "seedshare/stochastic.hpp"

namespace {

using namespace seedshare;

Scenario default_scenario() {
  return load_scenario(std::string(SEEDSHARE_SCENARIO_DIR) + "/default.cfg");
}

void BM_FluidIntegrate(benchmark::State& state) {
  const Scenario sc = default_scenario();
  const double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate(sc.initial_state, sc, sc.horizon, dt).final_state());
  }
}
BENCHMARK(BM_FluidIntegrate)->Arg(10)->Arg(100)->Arg(1000);

void BM_FluidRhs(benchmark::State& state) {
  const Scenario sc = default_scenario();
  MarketState s;
  s.x_legal = 40.0;
  s.y_legal = 12.0;
  s.x_illicit = 25.0;
  s.y_illicit = 8.0;
  s.adopters = 300.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fluid_rhs(s, 0.0, sc));
  }
}
BENCHMARK(BM_FluidRhs);

void BM_StochasticRun(benchmark::State& state) {
  Scenario sc = default_scenario();
  BassParams bass = std::get<BassParams>(sc.demand.kind);
  bass.market_size = static_cast<double>(state.range(0));
  sc.demand.kind = bass;
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_once(sc, sc.horizon, mix_seed(7, i++)).second);
  }
}
BENCHMARK(BM_StochasticRun)->Arg(200)->Arg(1000)->Arg(5000);

void BM_Ensemble(benchmark::State& state) {
  Scenario sc = default_scenario();
  BassParams bass = std::get<BassParams>(sc.demand.kind);
  bass.market_size = 500.0;
  sc.demand.kind = bass;
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_ensemble(sc, sc.horizon, 7, 64, threads).mean_net_revenue);
  }
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(4)->UseRealTime();

void BM_SweepDelta(benchmark::State& state) {
  const Scenario sc = default_scenario();
  const std::vector<double> grid = delta_grid(0.05, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_delta(sc, grid, Engine::fluid()).best_net);
  }
}
BENCHMARK(BM_SweepDelta);

}  // namespace

BENCHMARK_MAIN();
