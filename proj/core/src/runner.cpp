#include "caresim/runner.hpp"

#include <algorithm>

#include "caresim/dynamics.hpp"

namespace caresim {

namespace {

void clamp_nonnegative(std::vector<double>& v) {
    for (double& x : v) {
        x = std::max(0.0, x);
    }
}

}  // namespace

HealthTrajectory simulate_scenario(const Scenario& sc) {
    const auto grid = half_grid_times(sc.horizon, sc.dt);

    if (sc.dynamics.mode == DynamicsMode::Linear) {
        LinearSignals signals;
        signals.s = sample_signal(sc.signals.s, grid, signal_seed(sc.seed, SignalRole::S));
        signals.p = sample_signal(sc.signals.p, grid, signal_seed(sc.seed, SignalRole::P));
        signals.e = sample_signal(sc.signals.e, grid, signal_seed(sc.seed, SignalRole::E));
        signals.c = sample_signal(sc.signals.c, grid, signal_seed(sc.seed, SignalRole::C));
        return simulate_linear(sc.dynamics, signals, sc.h0, sc.horizon, sc.dt);
    }

    CoupledSignals signals;
    signals.e = sample_signal(sc.signals.e, grid, signal_seed(sc.seed, SignalRole::E));
    signals.s_c =
        sample_signal(sc.signals.s_c, grid, signal_seed(sc.seed, SignalRole::SocialCapital));
    signals.r_m =
        sample_signal(sc.signals.r_m, grid, signal_seed(sc.seed, SignalRole::ResourceInput));
    clamp_nonnegative(signals.e);
    clamp_nonnegative(signals.s_c);
    clamp_nonnegative(signals.r_m);
    return simulate_coupled(sc.dynamics, sc.allocation, sc.cost, signals, sc.h0, sc.horizon,
                            sc.dt);
}

RunResult run_scenario(const Scenario& sc, const std::optional<DetectorConfig>& detector) {
    RunResult result;
    result.trajectory = simulate_scenario(sc);
    result.cost_benefit = evaluate_scenario(result.trajectory, sc.economics);

    if (detector.has_value()) {
        if (detector->method == DetectorMethod::Cusum) {
            const auto window = static_cast<std::size_t>(
                std::max(2, detector->cusum.calibration_window));
            if (result.trajectory.size() > window) {
                TimeSeries series;
                series.label = sc.name;
                series.times = result.trajectory.times;
                series.values.assign(result.trajectory.h.begin(), result.trajectory.h.end());
                result.alerts = detect_cusum(series, *detector);
            }
        } else {
            if (result.trajectory.size() >= 2) {
                result.alerts = detect_rate(result.trajectory, *detector);
            }
        }
    }
    return result;
}

}  // namespace caresim
