#include "caresim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "caresim/errors.hpp"

namespace caresim {

namespace {

constexpr double kHealthMin = 0.0;
constexpr double kHealthMax = 100.0;

void check_grid_args(double h0, double horizon, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("simulate: dt must be positive");
    }
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("simulate: horizon must be positive");
    }
    if (h0 < kHealthMin || h0 > kHealthMax) {
        throw std::invalid_argument("simulate: h0 must lie in [0, 100]");
    }
}

void check_signal_length(const HalfGridSamples& samples, std::size_t expected, const char* name) {
    if (samples.size() != expected) {
        throw std::invalid_argument(std::string("simulate: signal '") + name +
                                    "' not sampled on the half-step grid (mismatched length)");
    }
}

// Clamp one full step's result into range; returns whether it was clamped.
bool clamp_step(double& h) {
    if (h < kHealthMin) {
        h = kHealthMin;
        return true;
    }
    if (h > kHealthMax) {
        h = kHealthMax;
        return true;
    }
    return false;
}

}  // namespace

std::string to_string(DynamicsMode mode) {
    return mode == DynamicsMode::Linear ? "linear" : "coupled";
}

std::size_t step_count(double horizon, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step_count: dt must be positive");
    }
    const long long n = std::llround(horizon / dt);
    if (n < 1) {
        throw std::invalid_argument("step_count: horizon must cover at least one step");
    }
    return static_cast<std::size_t>(n);
}

std::vector<double> half_grid_times(double horizon, double dt) {
    const std::size_t n = step_count(horizon, dt);
    const double half = 0.5 * dt;
    std::vector<double> times(2 * n + 1);
    for (std::size_t k = 0; k < times.size(); ++k) {
        times[k] = static_cast<double>(k) * half;
    }
    return times;
}

HalfGridSamples upsample_to_half_grid(const std::vector<double>& full_step_values) {
    if (full_step_values.size() < 2) {
        throw std::invalid_argument("upsample_to_half_grid: need at least two full-step samples");
    }
    HalfGridSamples half(2 * full_step_values.size() - 1);
    for (std::size_t i = 0; i < full_step_values.size(); ++i) {
        half[2 * i] = full_step_values[i];
        if (i + 1 < full_step_values.size()) {
            half[2 * i + 1] = 0.5 * (full_step_values[i] + full_step_values[i + 1]);
        }
    }
    return half;
}

HealthTrajectory simulate_linear(const DynamicsParams& params, const LinearSignals& signals,
                                 double h0, double horizon, double dt) {
    check_grid_args(h0, horizon, dt);
    const std::size_t n = step_count(horizon, dt);
    const std::size_t grid = 2 * n + 1;
    check_signal_length(signals.s, grid, "s");
    check_signal_length(signals.p, grid, "p");
    check_signal_length(signals.e, grid, "e");
    check_signal_length(signals.c, grid, "c");

    // The right-hand side does not depend on H, so the four RK4 stages
    // collapse to Simpson weights over the half grid.
    const auto rhs = [&](std::size_t k) {
        return params.alpha1 * signals.s[k] + params.alpha2 * signals.p[k] +
               params.alpha3 * signals.e[k] - params.beta * signals.c[k];
    };

    HealthTrajectory traj;
    traj.times.resize(n + 1);
    traj.h.resize(n + 1);
    traj.c.resize(n + 1);
    traj.clamped.assign(n + 1, false);

    double h = h0;
    traj.times[0] = 0.0;
    traj.h[0] = h;
    traj.c[0] = signals.c[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double k1 = rhs(2 * i);
        const double k2 = rhs(2 * i + 1);
        const double k4 = rhs(2 * i + 2);
        h += dt / 6.0 * (k1 + 4.0 * k2 + k4);
        const bool clamped = clamp_step(h);
        traj.times[i + 1] = static_cast<double>(i + 1) * dt;
        traj.h[i + 1] = h;
        traj.c[i + 1] = signals.c[2 * (i + 1)];
        traj.clamped[i + 1] = clamped;
    }
    return traj;
}

HealthTrajectory simulate_coupled(const DynamicsParams& params,
                                  const LogisticAllocationParams& alloc, const CostParams& cost,
                                  const CoupledSignals& signals, double h0, double horizon,
                                  double dt) {
    check_grid_args(h0, horizon, dt);
    const std::size_t n = step_count(horizon, dt);
    const std::size_t grid = 2 * n + 1;
    check_signal_length(signals.e, grid, "e");
    check_signal_length(signals.s_c, grid, "s_c");
    check_signal_length(signals.r_m, grid, "r_m");

    // Cost and environment damping depend only on the exogenous signals;
    // precompute them per grid point.
    std::vector<double> cost_at(grid);
    std::vector<double> damping(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        cost_at[k] = behavior_cost(cost, signals.s_c[k], signals.r_m[k]);
        damping[k] = 1.0 + params.kappa * signals.e[k];
        if (!(damping[k] > 0.0)) {
            throw NumericalError("simulate_coupled: 1 + kappa*E(t) must stay positive");
        }
    }

    const auto rhs = [&](double h, std::size_t k) {
        return params.alpha * logistic_allocation(alloc, h) / damping[k] -
               params.beta * cost_at[k];
    };

    HealthTrajectory traj;
    traj.times.resize(n + 1);
    traj.h.resize(n + 1);
    traj.r_h.resize(n + 1);
    traj.c.resize(n + 1);
    traj.clamped.assign(n + 1, false);

    double h = h0;
    traj.times[0] = 0.0;
    traj.h[0] = h;
    traj.r_h[0] = logistic_allocation(alloc, h);
    traj.c[0] = cost_at[0];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k0 = 2 * i;
        const double k1 = rhs(h, k0);
        const double k2 = rhs(h + 0.5 * dt * k1, k0 + 1);
        const double k3 = rhs(h + 0.5 * dt * k2, k0 + 1);
        const double k4 = rhs(h + dt * k3, k0 + 2);
        h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const bool clamped = clamp_step(h);
        traj.times[i + 1] = static_cast<double>(i + 1) * dt;
        traj.h[i + 1] = h;
        traj.r_h[i + 1] = logistic_allocation(alloc, h);
        traj.c[i + 1] = cost_at[k0 + 2];
        traj.clamped[i + 1] = clamped;
    }
    return traj;
}

std::optional<double> find_equilibrium(const DynamicsParams& params,
                                       const LogisticAllocationParams& alloc, double e_level,
                                       double c_level) {
    const double damping = 1.0 + params.kappa * e_level;
    if (!(damping > 0.0)) {
        throw NumericalError("find_equilibrium: 1 + kappa*E must be positive");
    }
    const auto rhs = [&](double h) {
        return params.alpha * logistic_allocation(alloc, h) / damping - params.beta * c_level;
    };

    // Scan unit brackets for a sign change, then bisect the first one found.
    // The right-hand side is monotone in H, so the smallest root is also the
    // only one up to flat degenerate segments.
    double prev = rhs(0.0);
    if (prev == 0.0) {
        return 0.0;
    }
    for (int k = 1; k <= 100; ++k) {
        const double here = rhs(static_cast<double>(k));
        if (here == 0.0) {
            return static_cast<double>(k);
        }
        if ((prev < 0.0) != (here < 0.0)) {
            double lo = static_cast<double>(k - 1);
            double hi = static_cast<double>(k);
            const bool lo_negative = prev < 0.0;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double v = rhs(mid);
                if (v == 0.0) {
                    return mid;
                }
                if ((v < 0.0) == lo_negative) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev = here;
    }
    return std::nullopt;
}

}  // namespace caresim
