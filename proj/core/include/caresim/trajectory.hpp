#pragma once

#include <cstddef>
#include <vector>

namespace caresim {

/// Time-indexed result of one simulation run. `times` is a uniform grid;
/// `h` is the health state clamped to [0, 100]; `clamped[i]` marks samples
/// where the raw integration step left that range. `r_h` carries the
/// allocated resource rate (coupled mode only, empty otherwise) and `c` the
/// behavior cost, both evaluated at the full-step times.
struct HealthTrajectory {
    std::vector<double> times;
    std::vector<double> h;
    std::vector<double> r_h;
    std::vector<double> c;
    std::vector<bool> clamped;

    std::size_t size() const { return times.size(); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

}  // namespace caresim
