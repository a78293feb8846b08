#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caresim/allocation.hpp"
#include "caresim/dynamics.hpp"
#include "caresim/economics.hpp"
#include "caresim/errors.hpp"
#include "caresim/signal.hpp"

namespace caresim {

/// The exogenous inputs of a run. Linear mode consumes s, p, e, c; coupled
/// mode consumes e, s_c, r_m. All six always exist so a scenario document
/// can switch modes without restructuring.
struct SignalSet {
    SignalSpec s{ConstantSignal{1.0}};    // social support
    SignalSpec p{ConstantSignal{1.0}};    // psychological state
    SignalSpec e{ConstantSignal{1.0}};    // environment
    SignalSpec c{ConstantSignal{1.0}};    // exogenous behavior cost (linear mode)
    SignalSpec s_c{ConstantSignal{1.0}};  // social-capital support
    SignalSpec r_m{ConstantSignal{1.0}};  // social-capital resource input
};

/// Roles used to derive independent sampling seeds from the scenario seed.
enum class SignalRole : std::uint64_t {
    S = 1,
    P = 2,
    E = 3,
    C = 4,
    SocialCapital = 5,
    ResourceInput = 6,
};

std::uint64_t signal_seed(std::uint64_t scenario_seed, SignalRole role);

/// Complete parameterization of one simulation run. Immutable by
/// convention after construction; all operations on it are pure.
struct Scenario {
    std::string name;
    double horizon = 30.0;  // days, > 0
    double dt = 0.1;        // days, > 0 and <= horizon
    double h0 = 50.0;       // initial health state in [0, 100]
    DynamicsParams dynamics;
    LogisticAllocationParams allocation;
    CostParams cost;
    EconomicsParams economics;
    SignalSet signals;
    std::uint64_t seed = 0;
};

enum class Severity { Error, Warning };

struct ValidationIssue {
    std::string path;
    std::string message;
    Severity severity = Severity::Error;
};

struct ValidationReport {
    bool ok = true;  // true iff no issue has severity Error
    std::vector<ValidationIssue> issues;
};

/// Parses a scenario document (JSON, UTF-8, one scenario per document).
/// Top-level keys: name, horizon, dt, h0, dynamics, allocation, cost,
/// economics, signals, seed. name/horizon/dt/h0 are required; every other
/// block has documented defaults. Unknown fields and type mismatches are
/// rejected. dt <= 0 or horizon <= 0 are rejected here as well so a
/// returned Scenario is always integrable.
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario; emits every field so the round trip is exact.
std::string serialize_scenario(const Scenario& scenario);

/// Checks every invariant of the scenario and its nested parameter blocks,
/// reporting all violations rather than stopping at the first. Violations
/// are data, not faults. Also sweeps the configured s_c/r_m signals over
/// the horizon and warns when the behavior cost can clamp at zero.
ValidationReport validate(const Scenario& scenario);

/// Named cohort scenarios. The contrasts are encoded as parameter
/// orderings (e.g. the high-pollution preset has a higher environment
/// level than low-pollution); the absolute magnitudes are documented
/// choices. Throws std::invalid_argument for an unknown name.
Scenario preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace caresim
