#pragma once

#include <optional>
#include <string>
#include <vector>

namespace caresim {

/// Uniformly sampled signal with explicit missing markers. Times must be
/// strictly increasing.
struct TimeSeries {
    std::vector<double> times;
    std::vector<std::optional<double>> values;
    std::string label;

    std::size_t size() const { return times.size(); }
    std::size_t observed_count() const {
        std::size_t n = 0;
        for (const auto& v : values) {
            if (v.has_value()) ++n;
        }
        return n;
    }
};

}  // namespace caresim
