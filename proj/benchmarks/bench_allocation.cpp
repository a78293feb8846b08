#include <benchmark/benchmark.h>

#include <vector>

#include "caresim/allocation.hpp"

using namespace caresim;

static std::vector<UtilitySpec> concave_specs(std::size_t n) {
    std::vector<UtilitySpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 0.5 + 0.4 * static_cast<double>(i % 3) / 2.0;
        specs.push_back({1.0 + 0.25 * static_cast<double>(i), 0.5, t, t});
    }
    return specs;
}

static void KktBudgetSolve(benchmark::State& state) {
    const auto specs = concave_specs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto plan = optimize_budget(specs, 10.0);
        benchmark::DoNotOptimize(plan.amounts.data());
    }
}
BENCHMARK(KktBudgetSolve)->RangeMultiplier(2)->Range(2, 32);

static void ProjectedGradientSolve(benchmark::State& state) {
    // theta > 1 forces the multi-start fallback
    std::vector<UtilitySpec> specs(static_cast<std::size_t>(state.range(0)),
                                   UtilitySpec{1.0, 1.0, 2.0, 1.0});
    for (auto _ : state) {
        auto plan = optimize_budget(specs, 4.0);
        benchmark::DoNotOptimize(plan.amounts.data());
    }
}
BENCHMARK(ProjectedGradientSolve)->Arg(2)->Arg(4);
