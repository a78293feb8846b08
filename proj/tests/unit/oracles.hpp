// Test-only oracles, independent of the implementation paths they check:
// finite differences for derivatives, exhaustive grid search for the budget
// optimizer, and small deterministic draw helpers.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "caresim/allocation.hpp"

namespace testutil {

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct GridResult {
    std::vector<double> amounts;
    double total_utility = 0.0;
};

// Exhaustive search over the budget simplex at a fixed absolute step. The
// leading coordinates walk the grid (tabulated once) and the last
// coordinate takes the exact remainder, so every evaluated point is
// feasible. Supports 2 and 3 participants.
inline GridResult grid_search_allocation(const std::vector<caresim::UtilitySpec>& specs,
                                         double budget, double step) {
    const std::size_t n = specs.size();
    const auto points = static_cast<std::size_t>(std::floor(budget / step)) + 1;

    std::vector<std::vector<double>> table(n, std::vector<double>(points));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < points; ++k) {
            table[i][k] = caresim::utility(specs[i], static_cast<double>(k) * step);
        }
    }

    GridResult best;
    best.total_utility = -1e300;
    if (n == 2) {
        for (std::size_t k = 0; k < points; ++k) {
            const double r0 = static_cast<double>(k) * step;
            const double r1 = budget - r0;
            const double u = table[0][k] + caresim::utility(specs[1], r1);
            if (u > best.total_utility) {
                best.total_utility = u;
                best.amounts = {r0, r1};
            }
        }
    } else if (n == 3) {
        for (std::size_t k0 = 0; k0 < points; ++k0) {
            const double r0 = static_cast<double>(k0) * step;
            for (std::size_t k1 = 0; k1 + k0 < points; ++k1) {
                const double r1 = static_cast<double>(k1) * step;
                const double r2 = budget - r0 - r1;
                if (r2 < 0.0) {
                    break;
                }
                const double u = table[0][k0] + table[1][k1] + caresim::utility(specs[2], r2);
                if (u > best.total_utility) {
                    best.total_utility = u;
                    best.amounts = {r0, r1, r2};
                }
            }
        }
    } else {
        throw std::invalid_argument("grid_search_allocation supports 2 or 3 participants");
    }
    return best;
}

// Deterministic uniform draws for property tests.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    std::uint64_t integer() { return engine_(); }

    bool coin() { return (engine_() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace testutil
