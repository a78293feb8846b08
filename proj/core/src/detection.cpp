#include "caresim/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace caresim {

std::string to_string(AlertDirection direction) {
    return direction == AlertDirection::Up ? "up" : "down";
}

std::vector<Alert> detect_cusum(const TimeSeries& series, const DetectorConfig& cfg) {
    const auto& p = cfg.cusum;
    if (p.drift < 0.0) {
        throw std::invalid_argument("detect_cusum: drift must be nonnegative");
    }
    if (!(p.threshold > 0.0)) {
        throw std::invalid_argument("detect_cusum: threshold must be positive");
    }
    if (p.calibration_window < 2) {
        throw std::invalid_argument("detect_cusum: calibration_window must be at least 2");
    }
    const auto window = static_cast<std::size_t>(p.calibration_window);
    if (series.size() <= window) {
        throw std::invalid_argument("detect_cusum: series must be longer than the calibration window");
    }
    for (const auto& v : series.values) {
        if (!v.has_value()) {
            throw std::invalid_argument("detect_cusum: series has missing values; fill gaps first");
        }
    }

    double mu0 = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        mu0 += *series.values[i];
    }
    mu0 /= static_cast<double>(window);

    std::vector<Alert> alerts;
    double g_up = 0.0;
    double g_down = 0.0;
    bool up_tripping = false;
    bool down_tripping = false;
    for (std::size_t i = window; i < series.size(); ++i) {
        const double deviation = *series.values[i] - mu0;
        g_up = std::max(0.0, g_up + deviation - p.drift);
        g_down = std::max(0.0, g_down - deviation - p.drift);

        const bool up_trip = g_up > p.threshold;
        const bool down_trip = g_down > p.threshold;
        if (up_trip) {
            if (!up_tripping) {
                alerts.push_back({i, series.times[i], AlertDirection::Up, g_up});
            }
            g_up = 0.0;
        }
        if (down_trip) {
            if (!down_tripping) {
                alerts.push_back({i, series.times[i], AlertDirection::Down, g_down});
            }
            g_down = 0.0;
        }
        up_tripping = up_trip;
        down_tripping = down_trip;
    }
    return alerts;
}

std::vector<Alert> detect_rate(const std::vector<double>& times, const std::vector<double>& values,
                               const DetectorConfig& cfg) {
    if (!(cfg.rate.max_abs_slope > 0.0)) {
        throw std::invalid_argument("detect_rate: max_abs_slope must be positive");
    }
    if (times.size() != values.size()) {
        throw std::invalid_argument("detect_rate: times and values must have the same length");
    }
    if (times.size() < 2) {
        throw std::invalid_argument("detect_rate: at least two samples required");
    }

    std::vector<Alert> alerts;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (!(dt > 0.0)) {
            throw std::invalid_argument("detect_rate: times must be strictly increasing");
        }
        const double slope = (values[i] - values[i - 1]) / dt;
        if (std::abs(slope) > cfg.rate.max_abs_slope) {
            alerts.push_back({i, times[i],
                              slope > 0.0 ? AlertDirection::Up : AlertDirection::Down,
                              std::abs(slope)});
        }
    }
    return alerts;
}

std::vector<Alert> detect_rate(const HealthTrajectory& traj, const DetectorConfig& cfg) {
    return detect_rate(traj.times, traj.h, cfg);
}

}  // namespace caresim
