#include "caresim/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "caresim/rng.hpp"

namespace caresim {

namespace {

constexpr int kOuterBisectionIters = 200;
constexpr int kInnerBisectionIters = 120;
constexpr double kMultiplierFloor = 1e-12;
constexpr double kInteriorEps = 1e-6;

void check_spec(const UtilitySpec& s) {
    if (!(s.a > 0.0) || s.b < 0.0 || !(s.theta > 0.0) || !(s.delta_u > 0.0)) {
        throw std::invalid_argument(
            "utility spec requires a > 0, b >= 0, theta > 0, delta_u > 0");
    }
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Largest resource amount a participant wants at shared marginal price nu,
// capped at the full budget. Valid only when the marginal utility is
// decreasing wherever positive (theta <= 1).
double demand_at(const UtilitySpec& spec, double nu, double cap) {
    if (marginal_utility(spec, cap) >= nu) {
        return cap;
    }
    const double r_min = 1e-12;
    if (marginal_utility(spec, r_min) <= nu) {
        return 0.0;
    }
    double lo = r_min;
    double hi = cap;
    for (int i = 0; i < kInnerBisectionIters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (marginal_utility(spec, mid) > nu) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double total_utility_of(const std::vector<UtilitySpec>& specs, const std::vector<double>& r) {
    double total = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        total += utility(specs[i], std::max(r[i], 0.0));
    }
    return total;
}

// Forces sum(amounts) onto the budget exactly (1e-9 relative contract):
// rescale, then absorb the residual into the largest coordinate.
void snap_to_budget(std::vector<double>& amounts, double budget) {
    double sum = std::accumulate(amounts.begin(), amounts.end(), 0.0);
    if (sum <= 0.0) {
        std::fill(amounts.begin(), amounts.end(), budget / static_cast<double>(amounts.size()));
        return;
    }
    const double scale = budget / sum;
    for (double& a : amounts) {
        a = std::max(0.0, a * scale);
    }
    sum = std::accumulate(amounts.begin(), amounts.end(), 0.0);
    auto largest = std::max_element(amounts.begin(), amounts.end());
    *largest += budget - sum;
    if (*largest < 0.0) {
        *largest = 0.0;
    }
}

std::optional<AllocationPlan> solve_kkt_bisection(const std::vector<UtilitySpec>& specs,
                                                  double budget) {
    double nu_hi = 0.0;
    for (const auto& s : specs) {
        nu_hi = std::max(nu_hi, marginal_utility(s, 1e-9));
    }
    nu_hi = std::min(nu_hi, 1e300);
    double nu_lo = kMultiplierFloor;

    const auto demand_sum = [&](double nu) {
        double sum = 0.0;
        for (const auto& s : specs) {
            sum += demand_at(s, nu, budget);
        }
        return sum;
    };

    // At a near-zero price everyone asks for as much as is still useful; if
    // that does not reach the budget the equality constraint cannot be met
    // through the multiplier and the caller falls back to projected gradient.
    if (demand_sum(nu_lo) < budget * (1.0 - 1e-9)) {
        return std::nullopt;
    }

    for (int i = 0; i < kOuterBisectionIters; ++i) {
        const double mid = 0.5 * (nu_lo + nu_hi);
        if (demand_sum(mid) > budget) {
            nu_lo = mid;
        } else {
            nu_hi = mid;
        }
    }

    AllocationPlan plan;
    plan.method = AllocationMethod::KktBisection;
    plan.amounts.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        plan.amounts[i] = demand_at(specs[i], nu_hi, budget);
    }
    snap_to_budget(plan.amounts, budget);
    plan.total_utility = total_utility_of(specs, plan.amounts);

    const bool any_interior = std::any_of(
        plan.amounts.begin(), plan.amounts.end(),
        [&](double a) { return a > kInteriorEps && a < budget - kInteriorEps; });
    if (any_interior) {
        plan.multiplier = nu_hi;
    }
    return plan;
}

AllocationPlan solve_projected_gradient(const std::vector<UtilitySpec>& specs, double budget) {
    const std::size_t n = specs.size();
    constexpr int kStarts = 16;
    constexpr int kIters = 10000;
    constexpr double kStep = 1e-2;
    constexpr double kGradClip = 1e6;

    std::vector<double> best;
    double best_utility = -std::numeric_limits<double>::infinity();

    for (int start = 0; start < kStarts; ++start) {
        std::vector<double> r(n, budget / static_cast<double>(n));
        if (start > 0) {
            // Deterministic random simplex point: normalized exponentials.
            std::mt19937_64 engine(splitmix64(0x9d2c5680u + static_cast<std::uint64_t>(start)));
            std::vector<double> e(n);
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
                if (u <= 0.0) {
                    u = 0.5;
                }
                e[i] = -std::log(u);
                sum += e[i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                r[i] = budget * e[i] / sum;
            }
        }

        std::vector<double> g(n);
        for (int it = 0; it < kIters; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                const double at = std::max(r[i], 1e-9);
                g[i] = std::clamp(marginal_utility(specs[i], at), -kGradClip, kGradClip);
            }
            for (std::size_t i = 0; i < n; ++i) {
                r[i] += kStep * g[i];
            }
            r = project_onto_simplex(std::move(r), budget);
        }

        const double u = total_utility_of(specs, r);
        if (u > best_utility) {
            best_utility = u;
            best = r;
        }
    }

    AllocationPlan plan;
    plan.method = AllocationMethod::ProjectedGradient;
    plan.amounts = std::move(best);
    snap_to_budget(plan.amounts, budget);
    plan.total_utility = total_utility_of(specs, plan.amounts);
    return plan;
}

}  // namespace

std::string to_string(AllocationMethod method) {
    switch (method) {
        case AllocationMethod::KktBisection: return "kkt-bisection";
        case AllocationMethod::ProjectedGradient: return "projected-gradient";
        case AllocationMethod::Grid: return "grid";
    }
    return "unknown";
}

double utility(const UtilitySpec& spec, double r) {
    check_spec(spec);
    if (r < 0.0) {
        throw std::invalid_argument("utility: resource amount must be nonnegative");
    }
    if (r == 0.0) {
        return 0.0;
    }
    return spec.a * std::pow(r, spec.theta) / (1.0 + spec.b * std::pow(r, spec.delta_u));
}

double marginal_utility(const UtilitySpec& spec, double r) {
    check_spec(spec);
    if (!(r > 0.0)) {
        throw std::invalid_argument("marginal_utility: resource amount must be positive");
    }
    const double rb = spec.b * std::pow(r, spec.delta_u);
    const double numer =
        spec.a * std::pow(r, spec.theta - 1.0) * (spec.theta + rb * (spec.theta - spec.delta_u));
    const double denom = (1.0 + rb) * (1.0 + rb);
    return numer / denom;
}

AllocationPlan optimize_budget(const std::vector<UtilitySpec>& specs, double budget) {
    if (specs.empty()) {
        throw std::invalid_argument("optimize_budget: at least one utility spec required");
    }
    if (!(budget > 0.0)) {
        throw std::invalid_argument("optimize_budget: budget must be positive");
    }
    for (const auto& s : specs) {
        check_spec(s);
    }

    // theta <= 1 guarantees the marginal utility is strictly decreasing
    // wherever positive, which the bisection inversion relies on. Specs with
    // theta > 1 have marginals that rise before falling, so they take the
    // multi-start route even when theta <= delta_u.
    const bool invertible = std::all_of(specs.begin(), specs.end(),
                                        [](const UtilitySpec& s) { return s.theta <= 1.0; });
    if (invertible) {
        if (auto plan = solve_kkt_bisection(specs, budget)) {
            return *plan;
        }
    }
    return solve_projected_gradient(specs, budget);
}

double logistic_allocation(const LogisticAllocationParams& params, double h) {
    return params.lambda_total * sigmoid(params.gamma * h);
}

std::vector<double> project_onto_simplex(std::vector<double> v, double total) {
    if (v.empty()) {
        throw std::invalid_argument("project_onto_simplex: empty vector");
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("project_onto_simplex: total must be positive");
    }
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - total) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            rho = j + 1;
            tau = candidate;
        }
    }
    (void)rho;
    for (double& x : v) {
        x = std::max(0.0, x - tau);
    }
    return v;
}

}  // namespace caresim
