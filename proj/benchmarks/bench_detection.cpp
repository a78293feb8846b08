#include <benchmark/benchmark.h>

#include <cmath>

#include "caresim/detection.hpp"

using namespace caresim;

static void CusumScan(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    TimeSeries series;
    for (std::size_t i = 0; i < n; ++i) {
        series.times.push_back(static_cast<double>(i));
        series.values.push_back(std::sin(0.01 * static_cast<double>(i)) +
                                (i > n / 2 ? 2.0 : 0.0));
    }
    DetectorConfig cfg;
    cfg.method = DetectorMethod::Cusum;
    cfg.cusum = {0.5, 8.0, 32};
    for (auto _ : state) {
        auto alerts = detect_cusum(series, cfg);
        benchmark::DoNotOptimize(alerts.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(CusumScan)->RangeMultiplier(8)->Range(1024, 262144);
