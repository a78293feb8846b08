#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "caresim/timeseries.hpp"
#include "caresim/trajectory.hpp"

namespace caresim {

enum class DetectorMethod { Cusum, RateThreshold };

struct CusumParams {
    double drift = 0.5;           // k, >= 0; absorbs slow trends
    double threshold = 5.0;       // alarm level, > 0
    int calibration_window = 10;  // samples used for the baseline mean, >= 2
};

struct RateParams {
    double max_abs_slope = 25.0;  // per day, > 0
};

struct DetectorConfig {
    DetectorMethod method = DetectorMethod::Cusum;
    CusumParams cusum;
    RateParams rate;
};

enum class AlertDirection { Up, Down };

std::string to_string(AlertDirection direction);

struct Alert {
    std::size_t index = 0;
    double time = 0.0;
    AlertDirection direction = AlertDirection::Up;
    double statistic = 0.0;  // detector statistic at the alarm, > threshold
};

/// Two-sided CUSUM on deviations from the calibration-window mean:
///   g+_i = max(0, g+_{i-1} + (x_i - mu0) - k)
///   g-_i = max(0, g-_{i-1} - (x_i - mu0) - k)
/// An alarm fires when either statistic exceeds the threshold; the tripping
/// statistic resets to zero afterwards. A sustained shift would then re-trip
/// on every following sample, so one Alert is reported per unbroken run of
/// tripping samples, at the run's first index. The recursion starts after
/// the calibration window; no alert can fire inside it.
///
/// Requires a complete series (fill gaps first) longer than the window.
std::vector<Alert> detect_cusum(const TimeSeries& series, const DetectorConfig& cfg);

/// Alerts at every sample whose one-step slope |x_i - x_{i-1}| / dt exceeds
/// max_abs_slope, direction by sign. Requires at least two samples.
std::vector<Alert> detect_rate(const std::vector<double>& times, const std::vector<double>& values,
                               const DetectorConfig& cfg);

std::vector<Alert> detect_rate(const HealthTrajectory& traj, const DetectorConfig& cfg);

}  // namespace caresim
