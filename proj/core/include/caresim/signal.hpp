#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace caresim {

struct ConstantSignal {
    double level = 0.0;
};

/// Right-inclusive step: the value is `after` for every t >= at.
struct StepSignal {
    double before = 0.0;
    double after = 0.0;
    double at = 0.0;
};

/// level + amplitude * sin(2*pi*t / period)
struct SinusoidSignal {
    double amplitude = 1.0;
    double period = 1.0;
    double level = 0.0;
};

/// Independent draws level + sigma * N(0,1), one per sample time.
struct GaussianNoiseSignal {
    double level = 0.0;
    double sigma = 1.0;
};

/// Linear interpolation between (time, value) knots; clamps to the first /
/// last knot value outside the table range. Knot times must be strictly
/// increasing. Sampling exactly at a knot time returns the knot value.
struct PiecewiseTableSignal {
    std::vector<std::pair<double, double>> points;
};

struct SignalSpec {
    std::variant<ConstantSignal, StepSignal, SinusoidSignal, GaussianNoiseSignal,
                 PiecewiseTableSignal>
        form = ConstantSignal{};

    /// Stable identifier of the active kind ("constant", "step", ...).
    std::string kind() const;
};

/// Evaluates the signal at each requested time. Deterministic for fixed
/// (spec, times, seed); the noise kind consumes one draw per sample in
/// order. Times must be nonempty and nondecreasing.
std::vector<double> sample_signal(const SignalSpec& spec, const std::vector<double>& times,
                                  std::uint64_t seed);

}  // namespace caresim
