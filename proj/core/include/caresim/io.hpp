#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "caresim/detection.hpp"
#include "caresim/imputation.hpp"
#include "caresim/timeseries.hpp"
#include "caresim/trajectory.hpp"

namespace caresim {

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double value);

/// Writes content to a sibling temp file and renames it into place.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// CSV dialect everywhere: comma separator, '.' decimal point, LF line
/// endings, UTF-8, header row required.

/// Columns time,h,r_h,c,clamped; the r_h field is blank in linear mode.
std::string trajectory_to_csv(const HealthTrajectory& traj);

/// Columns index,time,direction,statistic.
std::string alerts_to_csv(const std::vector<Alert>& alerts);

/// Columns time,value; an empty value field marks a missing sample.
TimeSeries parse_timeseries_csv(const std::string& text, const std::string& label);

std::string timeseries_to_csv(const TimeSeries& series);

/// Gap-filling over CSV text that echoes every observed row byte-identically
/// and synthesizes only the filled rows (original time text is kept).
std::string fill_gaps_csv(const std::string& csv_text, const GapPolicy& policy,
                          std::optional<GpKernel> kernel = std::nullopt,
                          std::optional<double> noise_variance = std::nullopt);

}  // namespace caresim
