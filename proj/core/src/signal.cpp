#include "caresim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "caresim/rng.hpp"

namespace caresim {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double eval_piecewise(const PiecewiseTableSignal& table, double t) {
    const auto& pts = table.points;
    if (pts.empty()) {
        throw std::invalid_argument("piecewise-table signal has no points");
    }
    if (t <= pts.front().first) {
        return pts.front().second;
    }
    if (t >= pts.back().first) {
        return pts.back().second;
    }
    auto it = std::lower_bound(pts.begin(), pts.end(), t,
                               [](const auto& p, double x) { return p.first < x; });
    if (it->first == t) {
        return it->second;  // exact knot hit, no interpolation roundoff
    }
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

}  // namespace

std::string SignalSpec::kind() const {
    struct Visitor {
        std::string operator()(const ConstantSignal&) const { return "constant"; }
        std::string operator()(const StepSignal&) const { return "step"; }
        std::string operator()(const SinusoidSignal&) const { return "sinusoid"; }
        std::string operator()(const GaussianNoiseSignal&) const { return "gaussian-noise"; }
        std::string operator()(const PiecewiseTableSignal&) const { return "piecewise-table"; }
    };
    return std::visit(Visitor{}, form);
}

std::vector<double> sample_signal(const SignalSpec& spec, const std::vector<double>& times,
                                  std::uint64_t seed) {
    if (times.empty()) {
        throw std::invalid_argument("sample_signal: times must be nonempty");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] < times[i - 1]) {
            throw std::invalid_argument("sample_signal: times must be nondecreasing");
        }
    }

    std::vector<double> out(times.size());
    if (const auto* c = std::get_if<ConstantSignal>(&spec.form)) {
        std::fill(out.begin(), out.end(), c->level);
    } else if (const auto* s = std::get_if<StepSignal>(&spec.form)) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            out[i] = times[i] >= s->at ? s->after : s->before;
        }
    } else if (const auto* w = std::get_if<SinusoidSignal>(&spec.form)) {
        if (!(w->period > 0.0)) {
            throw std::invalid_argument("sample_signal: sinusoid period must be positive");
        }
        for (std::size_t i = 0; i < times.size(); ++i) {
            out[i] = w->level + w->amplitude * std::sin(kTwoPi * times[i] / w->period);
        }
    } else if (const auto* g = std::get_if<GaussianNoiseSignal>(&spec.form)) {
        if (g->sigma < 0.0) {
            throw std::invalid_argument("sample_signal: noise sigma must be nonnegative");
        }
        NormalSampler normal(splitmix64(seed));
        for (std::size_t i = 0; i < times.size(); ++i) {
            out[i] = g->level + g->sigma * normal();
        }
    } else {
        const auto& table = std::get<PiecewiseTableSignal>(spec.form);
        for (std::size_t i = 1; i < table.points.size(); ++i) {
            if (!(table.points[i].first > table.points[i - 1].first)) {
                throw std::invalid_argument(
                    "sample_signal: piecewise-table times must be strictly increasing");
            }
        }
        for (std::size_t i = 0; i < times.size(); ++i) {
            out[i] = eval_piecewise(table, times[i]);
        }
    }
    return out;
}

}  // namespace caresim
