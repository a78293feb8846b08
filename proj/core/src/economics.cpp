#include "caresim/economics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace caresim {

std::string to_string(OperatingCostSource source) {
    return source == OperatingCostSource::Supplied ? "supplied" : "integrated-from-trajectory";
}

double behavior_cost(const CostParams& params, double s_c, double r_m) {
    if (params.c0 < 0.0 || params.delta_c < 0.0 || params.eta < 0.0) {
        throw std::invalid_argument("behavior_cost: cost parameters must be nonnegative");
    }
    if (s_c < 0.0 || r_m < 0.0) {
        throw std::invalid_argument("behavior_cost: s_c and r_m must be nonnegative");
    }
    const double bracket = 1.0 - params.delta_c * s_c / (1.0 + params.eta * r_m);
    return std::max(0.0, params.c0 * bracket);
}

double total_benefit(const EconomicsParams& params, double e_h) {
    const auto& w = params.benefit_weights;
    return w[0] * e_h + w[1] * params.e_s + w[2] * params.e_e;
}

double total_cost(const EconomicsParams& params, double c_o) {
    const auto& w = params.cost_weights;
    return w[0] * params.c_d + w[1] * c_o + w[2] * params.c_m;
}

CostBenefitReport evaluate_scenario(const HealthTrajectory& traj, const EconomicsParams& params) {
    if (traj.times.empty() || traj.h.empty()) {
        throw std::invalid_argument("evaluate_scenario: trajectory must be nonempty");
    }

    CostBenefitReport report;
    report.e_h = traj.h.back() - traj.h.front();
    report.e_s = params.e_s;
    report.e_e = params.e_e;
    report.c_d = params.c_d;
    report.c_m = params.c_m;

    if (params.operating_cost_source == OperatingCostSource::Supplied) {
        report.c_o = params.c_o;
    } else {
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < traj.c.size(); ++i) {
            integral += (traj.times[i + 1] - traj.times[i]) * 0.5 * (traj.c[i] + traj.c[i + 1]);
        }
        report.c_o = integral;
    }

    report.total_benefit = total_benefit(params, report.e_h);
    report.total_cost = total_cost(params, report.c_o);

    if (!(report.total_cost > 0.0)) {
        report.cbr = std::numeric_limits<double>::quiet_NaN();
        throw UndefinedCbrError(report);
    }
    report.cbr = report.total_benefit / report.total_cost;
    return report;
}

}  // namespace caresim
