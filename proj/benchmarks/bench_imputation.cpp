#include <benchmark/benchmark.h>

#include <cmath>

#include "caresim/imputation.hpp"

using namespace caresim;

static TimeSeries gappy_series(std::size_t n) {
    TimeSeries series;
    for (std::size_t i = 0; i < n; ++i) {
        series.times.push_back(static_cast<double>(i) * 0.5);
        if (i % 7 == 3 || i % 11 == 5) {
            series.values.push_back(std::nullopt);
        } else {
            series.values.push_back(std::sin(0.2 * static_cast<double>(i)));
        }
    }
    return series;
}

static void GpFitPredict(benchmark::State& state) {
    const auto series = gappy_series(static_cast<std::size_t>(state.range(0)));
    std::vector<double> query;
    for (std::size_t i = 0; i < series.size(); ++i) {
        query.push_back(series.times[i] + 0.25);
    }
    for (auto _ : state) {
        const auto model = fit_gp(series, {1.5, 1.0}, 1e-6);
        auto preds = model.predict(query);
        benchmark::DoNotOptimize(preds.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GpFitPredict)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void FillGaps(benchmark::State& state) {
    const auto series = gappy_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto filled = fill_gaps(series, {});
        benchmark::DoNotOptimize(filled.values.data());
    }
}
BENCHMARK(FillGaps)->RangeMultiplier(2)->Range(64, 1024);
