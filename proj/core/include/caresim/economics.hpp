#pragma once

#include <array>
#include <string>

#include "caresim/errors.hpp"
#include "caresim/trajectory.hpp"

namespace caresim {

/// Behavior-cost rule C = max(0, c0 * (1 - delta_c * s_c / (1 + eta * r_m))).
/// Social-capital support s_c lowers the cost; resource input r_m damps the
/// support's effect, pulling the cost back toward c0. A negative bracket
/// clamps to zero (a negative cost would act as an unbounded health subsidy
/// in the coupled dynamics).
struct CostParams {
    double c0 = 2.0;       // initial behavior cost, >= 0
    double delta_c = 0.3;  // social-capital impact factor, >= 0
    double eta = 0.5;      // resource sensitivity coefficient, >= 0
};

enum class OperatingCostSource { Supplied, IntegratedFromTrajectory };

std::string to_string(OperatingCostSource source);

struct EconomicsParams {
    std::array<double, 3> benefit_weights{0.5, 0.3, 0.2};  // health, social, economic
    std::array<double, 3> cost_weights{0.4, 0.4, 0.2};     // direct, operating, maintenance
    double e_s = 5.0;  // social benefit component
    double e_e = 5.0;  // economic benefit component
    double c_d = 10.0;  // direct cost component
    double c_m = 4.0;   // maintenance cost component
    OperatingCostSource operating_cost_source = OperatingCostSource::IntegratedFromTrajectory;
    double c_o = 0.0;  // operating cost when operating_cost_source == Supplied
};

struct CostBenefitReport {
    double e_h = 0.0;
    double e_s = 0.0;
    double e_e = 0.0;
    double total_benefit = 0.0;
    double c_d = 0.0;
    double c_o = 0.0;
    double c_m = 0.0;
    double total_cost = 0.0;
    double cbr = 0.0;
};

/// Thrown by evaluate_scenario when the weighted total cost is not positive.
/// The partially filled report (all components, cbr = NaN) rides along so
/// callers can still inspect or persist the components.
class UndefinedCbrError : public NumericalError {
public:
    explicit UndefinedCbrError(CostBenefitReport partial)
        : NumericalError("total cost is not positive; cost-benefit ratio undefined"),
          report(partial) {}

    CostBenefitReport report;
};

/// Throws std::invalid_argument for negative s_c or r_m.
double behavior_cost(const CostParams& params, double s_c, double r_m);

/// benefit_weights . (e_h, params.e_s, params.e_e)
double total_benefit(const EconomicsParams& params, double e_h);

/// cost_weights . (params.c_d, c_o, params.c_m)
double total_cost(const EconomicsParams& params, double c_o);

/// Builds the full cost-benefit report for a completed trajectory. The
/// health benefit is the terminal-minus-initial health state; the operating
/// cost is either the configured scalar or the trapezoidal integral of the
/// behavior-cost co-trajectory.
CostBenefitReport evaluate_scenario(const HealthTrajectory& traj, const EconomicsParams& params);

}  // namespace caresim
