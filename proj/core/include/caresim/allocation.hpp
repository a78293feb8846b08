#pragma once

#include <optional>
#include <string>
#include <vector>

namespace caresim {

/// Saturating per-participant utility U(r) = a * r^theta / (1 + b * r^delta_u).
/// Utility grows with allocated resources but with diminishing returns; for
/// theta == delta_u and b > 0 it is bounded above by a/b.
struct UtilitySpec {
    double a = 1.0;        // utility coefficient, > 0
    double b = 0.0;        // saturation coefficient, >= 0
    double theta = 1.0;    // utility exponent, > 0
    double delta_u = 1.0;  // saturation exponent, > 0
};

/// Health-sensitive resource rate R(h) = lambda_total * sigmoid(gamma * h).
///
/// Note on the sign of gamma: the rate *increases* with health state when
/// gamma > 0 and *decreases* when gamma < 0. Default scenarios use a
/// negative gamma so that participants in poorer health draw more
/// resources; both signs are supported.
struct LogisticAllocationParams {
    double lambda_total = 10.0;  // total resource rate, > 0
    double gamma = -0.05;        // health sensitivity, any sign
};

enum class AllocationMethod { KktBisection, ProjectedGradient, Grid };

std::string to_string(AllocationMethod method);

struct AllocationPlan {
    std::vector<double> amounts;        // one nonnegative amount per participant
    double total_utility = 0.0;         // achieved objective value
    std::optional<double> multiplier;   // shared marginal utility; absent for corner-only solutions
    AllocationMethod method = AllocationMethod::KktBisection;
};

/// U(r). Throws std::invalid_argument for r < 0 or an invalid spec.
double utility(const UtilitySpec& spec, double r);

/// dU/dr = a * r^(theta-1) * [theta + b * r^delta_u * (theta - delta_u)]
///         / (1 + b * r^delta_u)^2.
/// Throws std::invalid_argument for r <= 0 or an invalid spec.
double marginal_utility(const UtilitySpec& spec, double r);

/// Maximizes the summed utility subject to sum(amounts) == budget and
/// amounts >= 0.
///
/// When every participant has theta <= 1 the marginal utilities are
/// strictly decreasing wherever positive, and the problem is solved by
/// bisection on the shared multiplier, inverting each marginal utility.
/// Otherwise (or if the multiplier bracket cannot exhaust the budget) a
/// deterministic multi-start projected-gradient ascent over the simplex is
/// used. Both routes are fully deterministic.
AllocationPlan optimize_budget(const std::vector<UtilitySpec>& specs, double budget);

/// lambda_total * sigmoid(gamma * h), evaluated in the numerically stable
/// form; strictly inside (0, lambda_total) for finite gamma * h up to
/// floating-point underflow.
double logistic_allocation(const LogisticAllocationParams& params, double h);

/// Euclidean projection of v onto { x : x >= 0, sum(x) == total }.
/// Exposed because the projected-gradient fallback and its tests share it.
std::vector<double> project_onto_simplex(std::vector<double> v, double total);

}  // namespace caresim
