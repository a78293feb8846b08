#include <benchmark/benchmark.h>

#include "caresim/dynamics.hpp"
#include "caresim/runner.hpp"
#include "caresim/scenario.hpp"

using namespace caresim;

static void CoupledSimulation(benchmark::State& state) {
    const auto steps = static_cast<double>(state.range(0));
    const double dt = 0.05;
    const double horizon = steps * dt;
    const std::size_t grid = 2 * step_count(horizon, dt) + 1;

    DynamicsParams params;
    params.mode = DynamicsMode::Coupled;
    const CoupledSignals signals{HalfGridSamples(grid, 1.0), HalfGridSamples(grid, 1.0),
                                 HalfGridSamples(grid, 1.0)};
    const LogisticAllocationParams alloc{10.0, -0.05};
    const CostParams cost{2.0, 0.3, 0.5};

    for (auto _ : state) {
        auto traj = simulate_coupled(params, alloc, cost, signals, 55.0, horizon, dt);
        benchmark::DoNotOptimize(traj.h.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(CoupledSimulation)->RangeMultiplier(4)->Range(256, 16384);

static void PresetEndToEnd(benchmark::State& state) {
    const Scenario scenario = preset("rural");
    for (auto _ : state) {
        auto result = run_scenario(scenario);
        benchmark::DoNotOptimize(result.trajectory.h.data());
    }
}
BENCHMARK(PresetEndToEnd);
