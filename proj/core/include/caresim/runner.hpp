#pragma once

#include <optional>
#include <vector>

#include "caresim/detection.hpp"
#include "caresim/economics.hpp"
#include "caresim/scenario.hpp"
#include "caresim/trajectory.hpp"

namespace caresim {

struct RunResult {
    HealthTrajectory trajectory;
    CostBenefitReport cost_benefit;
    std::vector<Alert> alerts;
};

/// Samples the scenario's signals on the integration grid and simulates it
/// in the configured mode.
///
/// Generated signals are evaluated exactly at the half-step times rather
/// than interpolated, which keeps the integrator at its full order. In
/// coupled mode the environment and social-capital inputs are clamped at
/// zero before entering the cost and damping terms (a noisy signal may dip
/// negative; the dynamics require nonnegative levels there).
HealthTrajectory simulate_scenario(const Scenario& scenario);

/// simulate_scenario + cost-benefit evaluation + change detection on the
/// health trajectory. Detection is skipped (empty alert list) when no
/// detector is configured or the trajectory is too short for the
/// calibration window. Propagates UndefinedCbrError from the economics
/// step.
RunResult run_scenario(const Scenario& scenario,
                       const std::optional<DetectorConfig>& detector = DetectorConfig{});

}  // namespace caresim
