#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caresim/allocation.hpp"
#include "caresim/economics.hpp"
#include "caresim/trajectory.hpp"

namespace caresim {

enum class DynamicsMode { Linear, Coupled };

std::string to_string(DynamicsMode mode);

/// Coefficients of the two health-state equations.
///
/// Linear mode:  dH/dt = alpha1*S + alpha2*P + alpha3*E - beta*C, with all
/// four inputs exogenous signals.
///
/// Coupled mode: dH/dt = alpha * R(H) / (1 + kappa*E) - beta*C, where R(H)
/// is the logistic allocation rate evaluated at the current health state
/// inside every integration stage and C comes from the behavior-cost rule
/// applied to the sampled social-capital signals.
struct DynamicsParams {
    DynamicsMode mode = DynamicsMode::Coupled;
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double alpha3 = 1.0;
    double alpha = 1.0;
    double beta = 0.4;   // >= 0
    double kappa = 0.5;  // >= 0
};

/// Signal samples on the Runge-Kutta evaluation grid of a run with N full
/// steps: 2N+1 values, where entry 2i is t_i = i*dt and entry 2i+1 is the
/// half step t_i + dt/2. Generated signals should be sampled directly on
/// this grid (see half_grid_times); use upsample_to_half_grid only for
/// externally measured series that exist at full steps alone.
using HalfGridSamples = std::vector<double>;

/// Number of full integration steps; the horizon is rounded to the nearest
/// whole number of steps. Throws std::invalid_argument unless at least one
/// step fits.
std::size_t step_count(double horizon, double dt);

/// The 2N+1 evaluation times i*dt/2.
std::vector<double> half_grid_times(double horizon, double dt);

/// Midpoint linear interpolation of full-step samples onto the half grid.
HalfGridSamples upsample_to_half_grid(const std::vector<double>& full_step_values);

struct LinearSignals {
    HalfGridSamples s;  // social support
    HalfGridSamples p;  // psychological state
    HalfGridSamples e;  // environment
    HalfGridSamples c;  // exogenous behavior cost
};

struct CoupledSignals {
    HalfGridSamples e;    // environment
    HalfGridSamples s_c;  // social-capital support
    HalfGridSamples r_m;  // social-capital resource input
};

/// Classical fixed-step RK4 over the linear equation. The health state is
/// clamped to [0, 100] after each full step and clamp events are flagged.
HealthTrajectory simulate_linear(const DynamicsParams& params, const LinearSignals& signals,
                                 double h0, double horizon, double dt);

/// Classical fixed-step RK4 over the coupled equation, closing the loop
/// through the logistic allocation rate and the behavior-cost rule.
/// Records the r_h and c co-trajectories at full steps.
HealthTrajectory simulate_coupled(const DynamicsParams& params,
                                  const LogisticAllocationParams& alloc, const CostParams& cost,
                                  const CoupledSignals& signals, double h0, double horizon,
                                  double dt);

/// Root of alpha * R(H) / (1 + kappa*e_level) - beta*c_level on [0, 100]
/// for constant environment and cost levels, found by scanning unit
/// brackets and bisecting to 1e-10. Returns the smallest root, or nullopt
/// when the right-hand side keeps one sign over the whole range.
std::optional<double> find_equilibrium(const DynamicsParams& params,
                                       const LogisticAllocationParams& alloc, double e_level,
                                       double c_level);

}  // namespace caresim
