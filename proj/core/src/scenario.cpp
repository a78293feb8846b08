#include "caresim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

#include "caresim/rng.hpp"
#include "json.hpp"

namespace caresim {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

std::string joined(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail("type mismatch at " + (path.empty() ? std::string("document root") : path) +
             ": expected an object");
    }
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end()) {
            fail("unknown field: " + joined(path, item.key()));
        }
    }
}

double require_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) {
        fail("missing required field: " + joined(path, key));
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        fail("type mismatch at " + joined(path, key) + ": expected a number");
    }
    return v.get<double>();
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        fail("type mismatch at " + joined(path, key) + ": expected a number");
    }
    return v.get<double>();
}

std::string require_string(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) {
        fail("missing required field: " + joined(path, key));
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        fail("type mismatch at " + joined(path, key) + ": expected a string");
    }
    return v.get<std::string>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        fail("type mismatch at " + joined(path, key) + ": expected a string");
    }
    return v.get<std::string>();
}

std::uint64_t get_seed(const json& obj, const std::string& path, const char* key,
                       std::uint64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
        fail("type mismatch at " + joined(path, key) + ": expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::array<double, 3> get_triple(const json& obj, const std::string& path, const char* key,
                                 std::array<double, 3> fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) {
        fail("type mismatch at " + joined(path, key) + ": expected an array of three numbers");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!v[i].is_number()) {
            fail("type mismatch at " + joined(path, key) + ": expected an array of three numbers");
        }
        out[i] = v[i].get<double>();
    }
    return out;
}

SignalSpec parse_signal(const json& j, const std::string& path) {
    check_object(j, path);
    const std::string kind = require_string(j, path, "kind");
    SignalSpec spec;
    if (kind == "constant") {
        check_keys(j, path, {"kind", "level"});
        spec.form = ConstantSignal{get_number(j, path, "level", 0.0)};
    } else if (kind == "step") {
        check_keys(j, path, {"kind", "before", "after", "at"});
        spec.form = StepSignal{get_number(j, path, "before", 0.0),
                               get_number(j, path, "after", 0.0),
                               get_number(j, path, "at", 0.0)};
    } else if (kind == "sinusoid") {
        check_keys(j, path, {"kind", "amplitude", "period", "level"});
        spec.form = SinusoidSignal{get_number(j, path, "amplitude", 1.0),
                                   get_number(j, path, "period", 1.0),
                                   get_number(j, path, "level", 0.0)};
    } else if (kind == "gaussian-noise") {
        check_keys(j, path, {"kind", "level", "sigma"});
        spec.form = GaussianNoiseSignal{get_number(j, path, "level", 0.0),
                                        get_number(j, path, "sigma", 1.0)};
    } else if (kind == "piecewise-table") {
        check_keys(j, path, {"kind", "points"});
        if (!j.contains("points") || !j.at("points").is_array()) {
            fail("type mismatch at " + joined(path, "points") +
                 ": expected an array of [time, value] pairs");
        }
        PiecewiseTableSignal table;
        for (const auto& pt : j.at("points")) {
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
                fail("type mismatch at " + joined(path, "points") +
                     ": expected an array of [time, value] pairs");
            }
            table.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
        }
        spec.form = std::move(table);
    } else {
        fail("unknown signal kind '" + kind + "' at " + path);
    }
    return spec;
}

json serialize_signal(const SignalSpec& spec) {
    json j;
    j["kind"] = spec.kind();
    if (const auto* c = std::get_if<ConstantSignal>(&spec.form)) {
        j["level"] = c->level;
    } else if (const auto* s = std::get_if<StepSignal>(&spec.form)) {
        j["before"] = s->before;
        j["after"] = s->after;
        j["at"] = s->at;
    } else if (const auto* w = std::get_if<SinusoidSignal>(&spec.form)) {
        j["amplitude"] = w->amplitude;
        j["period"] = w->period;
        j["level"] = w->level;
    } else if (const auto* g = std::get_if<GaussianNoiseSignal>(&spec.form)) {
        j["level"] = g->level;
        j["sigma"] = g->sigma;
    } else {
        const auto& table = std::get<PiecewiseTableSignal>(spec.form);
        json points = json::array();
        for (const auto& [t, v] : table.points) {
            points.push_back(json::array({t, v}));
        }
        j["points"] = std::move(points);
    }
    return j;
}

void validate_signal(const SignalSpec& spec, const std::string& path,
                     std::vector<ValidationIssue>& issues) {
    if (const auto* w = std::get_if<SinusoidSignal>(&spec.form)) {
        if (!(w->period > 0.0)) {
            issues.push_back({path + ".period", "sinusoid period must be positive",
                              Severity::Error});
        }
    } else if (const auto* g = std::get_if<GaussianNoiseSignal>(&spec.form)) {
        if (g->sigma < 0.0) {
            issues.push_back({path + ".sigma", "noise sigma must be nonnegative",
                              Severity::Error});
        }
    } else if (const auto* table = std::get_if<PiecewiseTableSignal>(&spec.form)) {
        if (table->points.empty()) {
            issues.push_back({path + ".points", "piecewise table must have at least one point",
                              Severity::Error});
        }
        for (std::size_t i = 1; i < table->points.size(); ++i) {
            if (!(table->points[i].first > table->points[i - 1].first)) {
                issues.push_back({path + ".points",
                                  "piecewise-table times must be strictly increasing",
                                  Severity::Error});
                break;
            }
        }
    }
}

Scenario base_preset(const std::string& name) {
    Scenario sc;
    sc.name = name;
    sc.horizon = 60.0;
    sc.dt = 0.05;
    sc.h0 = 55.0;
    sc.seed = 1234567;
    sc.dynamics.mode = DynamicsMode::Coupled;
    sc.dynamics.alpha = 1.0;
    sc.dynamics.beta = 0.4;
    sc.dynamics.kappa = 0.5;
    sc.allocation.lambda_total = 10.0;
    sc.allocation.gamma = -0.05;
    sc.cost = CostParams{2.0, 0.3, 0.5};
    return sc;
}

void set_constant(SignalSpec& spec, double level) { spec.form = ConstantSignal{level}; }

}  // namespace

std::uint64_t signal_seed(std::uint64_t scenario_seed, SignalRole role) {
    return splitmix64(scenario_seed + static_cast<std::uint64_t>(role));
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("syntax error: ") + e.what());
    }
    check_object(doc, "");
    check_keys(doc, "",
               {"name", "horizon", "dt", "h0", "dynamics", "allocation", "cost", "economics",
                "signals", "seed"});

    Scenario sc;
    sc.name = require_string(doc, "", "name");
    sc.horizon = require_number(doc, "", "horizon");
    sc.dt = require_number(doc, "", "dt");
    sc.h0 = require_number(doc, "", "h0");
    sc.seed = get_seed(doc, "", "seed", 0);

    if (!(sc.dt > 0.0)) {
        fail("dt must be positive");
    }
    if (!(sc.horizon > 0.0)) {
        fail("horizon must be positive");
    }

    if (doc.contains("dynamics")) {
        const auto& d = doc.at("dynamics");
        check_object(d, "dynamics");
        check_keys(d, "dynamics", {"mode", "alpha1", "alpha2", "alpha3", "alpha", "beta", "kappa"});
        const std::string mode = get_string(d, "dynamics", "mode", "coupled");
        if (mode == "linear") {
            sc.dynamics.mode = DynamicsMode::Linear;
        } else if (mode == "coupled") {
            sc.dynamics.mode = DynamicsMode::Coupled;
        } else {
            fail("unknown dynamics mode '" + mode + "'; expected linear or coupled");
        }
        sc.dynamics.alpha1 = get_number(d, "dynamics", "alpha1", sc.dynamics.alpha1);
        sc.dynamics.alpha2 = get_number(d, "dynamics", "alpha2", sc.dynamics.alpha2);
        sc.dynamics.alpha3 = get_number(d, "dynamics", "alpha3", sc.dynamics.alpha3);
        sc.dynamics.alpha = get_number(d, "dynamics", "alpha", sc.dynamics.alpha);
        sc.dynamics.beta = get_number(d, "dynamics", "beta", sc.dynamics.beta);
        sc.dynamics.kappa = get_number(d, "dynamics", "kappa", sc.dynamics.kappa);
    }

    if (doc.contains("allocation")) {
        const auto& a = doc.at("allocation");
        check_object(a, "allocation");
        check_keys(a, "allocation", {"lambda_total", "gamma"});
        sc.allocation.lambda_total =
            get_number(a, "allocation", "lambda_total", sc.allocation.lambda_total);
        sc.allocation.gamma = get_number(a, "allocation", "gamma", sc.allocation.gamma);
    }

    if (doc.contains("cost")) {
        const auto& c = doc.at("cost");
        check_object(c, "cost");
        check_keys(c, "cost", {"c0", "delta_c", "eta"});
        sc.cost.c0 = get_number(c, "cost", "c0", sc.cost.c0);
        sc.cost.delta_c = get_number(c, "cost", "delta_c", sc.cost.delta_c);
        sc.cost.eta = get_number(c, "cost", "eta", sc.cost.eta);
    }

    if (doc.contains("economics")) {
        const auto& e = doc.at("economics");
        check_object(e, "economics");
        check_keys(e, "economics",
                   {"benefit_weights", "cost_weights", "e_s", "e_e", "c_d", "c_m",
                    "operating_cost_source", "c_o"});
        sc.economics.benefit_weights =
            get_triple(e, "economics", "benefit_weights", sc.economics.benefit_weights);
        sc.economics.cost_weights =
            get_triple(e, "economics", "cost_weights", sc.economics.cost_weights);
        sc.economics.e_s = get_number(e, "economics", "e_s", sc.economics.e_s);
        sc.economics.e_e = get_number(e, "economics", "e_e", sc.economics.e_e);
        sc.economics.c_d = get_number(e, "economics", "c_d", sc.economics.c_d);
        sc.economics.c_m = get_number(e, "economics", "c_m", sc.economics.c_m);
        const std::string source = get_string(e, "economics", "operating_cost_source",
                                              to_string(sc.economics.operating_cost_source));
        if (source == "supplied") {
            sc.economics.operating_cost_source = OperatingCostSource::Supplied;
        } else if (source == "integrated-from-trajectory") {
            sc.economics.operating_cost_source = OperatingCostSource::IntegratedFromTrajectory;
        } else {
            fail("unknown operating_cost_source '" + source +
                 "'; expected supplied or integrated-from-trajectory");
        }
        sc.economics.c_o = get_number(e, "economics", "c_o", sc.economics.c_o);
    }

    if (doc.contains("signals")) {
        const auto& s = doc.at("signals");
        check_object(s, "signals");
        check_keys(s, "signals", {"s", "p", "e", "c", "s_c", "r_m"});
        if (s.contains("s")) sc.signals.s = parse_signal(s.at("s"), "signals.s");
        if (s.contains("p")) sc.signals.p = parse_signal(s.at("p"), "signals.p");
        if (s.contains("e")) sc.signals.e = parse_signal(s.at("e"), "signals.e");
        if (s.contains("c")) sc.signals.c = parse_signal(s.at("c"), "signals.c");
        if (s.contains("s_c")) sc.signals.s_c = parse_signal(s.at("s_c"), "signals.s_c");
        if (s.contains("r_m")) sc.signals.r_m = parse_signal(s.at("r_m"), "signals.r_m");
    }

    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    doc["horizon"] = sc.horizon;
    doc["dt"] = sc.dt;
    doc["h0"] = sc.h0;

    json dynamics;
    dynamics["mode"] = to_string(sc.dynamics.mode);
    dynamics["alpha1"] = sc.dynamics.alpha1;
    dynamics["alpha2"] = sc.dynamics.alpha2;
    dynamics["alpha3"] = sc.dynamics.alpha3;
    dynamics["alpha"] = sc.dynamics.alpha;
    dynamics["beta"] = sc.dynamics.beta;
    dynamics["kappa"] = sc.dynamics.kappa;
    doc["dynamics"] = std::move(dynamics);

    json allocation;
    allocation["lambda_total"] = sc.allocation.lambda_total;
    allocation["gamma"] = sc.allocation.gamma;
    doc["allocation"] = std::move(allocation);

    json cost;
    cost["c0"] = sc.cost.c0;
    cost["delta_c"] = sc.cost.delta_c;
    cost["eta"] = sc.cost.eta;
    doc["cost"] = std::move(cost);

    json economics;
    economics["benefit_weights"] = sc.economics.benefit_weights;
    economics["cost_weights"] = sc.economics.cost_weights;
    economics["e_s"] = sc.economics.e_s;
    economics["e_e"] = sc.economics.e_e;
    economics["c_d"] = sc.economics.c_d;
    economics["c_m"] = sc.economics.c_m;
    economics["operating_cost_source"] = to_string(sc.economics.operating_cost_source);
    economics["c_o"] = sc.economics.c_o;
    doc["economics"] = std::move(economics);

    json signals;
    signals["s"] = serialize_signal(sc.signals.s);
    signals["p"] = serialize_signal(sc.signals.p);
    signals["e"] = serialize_signal(sc.signals.e);
    signals["c"] = serialize_signal(sc.signals.c);
    signals["s_c"] = serialize_signal(sc.signals.s_c);
    signals["r_m"] = serialize_signal(sc.signals.r_m);
    doc["signals"] = std::move(signals);

    doc["seed"] = sc.seed;
    return doc.dump(2) + "\n";
}

ValidationReport validate(const Scenario& sc) {
    std::vector<ValidationIssue> issues;

    if (sc.name.empty()) {
        issues.push_back({"name", "name must be nonempty", Severity::Error});
    }
    if (!(sc.horizon > 0.0)) {
        issues.push_back({"horizon", "horizon must be positive", Severity::Error});
    }
    if (!(sc.dt > 0.0)) {
        issues.push_back({"dt", "dt must be positive", Severity::Error});
    } else {
        if (sc.dt > sc.horizon) {
            issues.push_back({"dt", "dt must not exceed the horizon", Severity::Error});
        } else if (sc.horizon > 0.0) {
            if (std::llround(sc.horizon / sc.dt) < 1) {
                issues.push_back(
                    {"dt", "horizon/dt must yield at least 2 sample points", Severity::Error});
            }
            const double n = std::llround(sc.horizon / sc.dt);
            if (std::abs(n * sc.dt - sc.horizon) > 1e-9 * std::max(1.0, sc.horizon)) {
                issues.push_back({"horizon",
                                  "horizon is not an integer multiple of dt; the run is rounded "
                                  "to the nearest whole number of steps",
                                  Severity::Warning});
            }
        }
    }
    if (sc.h0 < 0.0 || sc.h0 > 100.0) {
        issues.push_back({"h0", "h0 must lie in [0, 100]", Severity::Error});
    }

    const auto check_finite = [&](double v, const char* path) {
        if (!std::isfinite(v)) {
            issues.push_back({path, "coefficient must be finite", Severity::Error});
        }
    };
    check_finite(sc.dynamics.alpha1, "dynamics.alpha1");
    check_finite(sc.dynamics.alpha2, "dynamics.alpha2");
    check_finite(sc.dynamics.alpha3, "dynamics.alpha3");
    check_finite(sc.dynamics.alpha, "dynamics.alpha");
    check_finite(sc.dynamics.beta, "dynamics.beta");
    check_finite(sc.dynamics.kappa, "dynamics.kappa");
    if (sc.dynamics.beta < 0.0) {
        issues.push_back({"dynamics.beta", "beta must be nonnegative", Severity::Error});
    }
    if (sc.dynamics.kappa < 0.0) {
        issues.push_back({"dynamics.kappa", "kappa must be nonnegative", Severity::Error});
    }

    if (!(sc.allocation.lambda_total > 0.0)) {
        issues.push_back(
            {"allocation.lambda_total", "lambda_total must be positive", Severity::Error});
    }
    check_finite(sc.allocation.gamma, "allocation.gamma");

    if (sc.cost.c0 < 0.0) {
        issues.push_back({"cost.c0", "c0 must be nonnegative", Severity::Error});
    }
    if (sc.cost.delta_c < 0.0) {
        issues.push_back({"cost.delta_c", "delta_c must be nonnegative", Severity::Error});
    }
    if (sc.cost.eta < 0.0) {
        issues.push_back({"cost.eta", "eta must be nonnegative", Severity::Error});
    }

    const auto check_weights = [&](const std::array<double, 3>& w, const std::string& path) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (w[i] < 0.0) {
                issues.push_back({path + "[" + std::to_string(i) + "]",
                                  "weights must be nonnegative", Severity::Error});
            }
            sum += w[i];
        }
        if (!(sum > 0.0)) {
            issues.push_back({path, "weights must not all be zero", Severity::Error});
        }
    };
    check_weights(sc.economics.benefit_weights, "economics.benefit_weights");
    check_weights(sc.economics.cost_weights, "economics.cost_weights");

    validate_signal(sc.signals.s, "signals.s", issues);
    validate_signal(sc.signals.p, "signals.p", issues);
    validate_signal(sc.signals.e, "signals.e", issues);
    validate_signal(sc.signals.c, "signals.c", issues);
    validate_signal(sc.signals.s_c, "signals.s_c", issues);
    validate_signal(sc.signals.r_m, "signals.r_m", issues);

    // Behavior-cost clamp check: sweep the configured social-capital signals
    // over the run grid and compare the worst case against the clamp
    // boundary delta_c * max(s_c) > 1 + eta * min(r_m).
    const bool structurally_sound =
        std::none_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.severity == Severity::Error; });
    if (structurally_sound) {
        const std::size_t n = step_count(sc.horizon, sc.dt);
        std::vector<double> grid(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            grid[i] = static_cast<double>(i) * sc.dt;
        }
        const auto s_c = sample_signal(sc.signals.s_c, grid,
                                       signal_seed(sc.seed, SignalRole::SocialCapital));
        const auto r_m = sample_signal(sc.signals.r_m, grid,
                                       signal_seed(sc.seed, SignalRole::ResourceInput));
        const double max_s = *std::max_element(s_c.begin(), s_c.end());
        const double min_r = *std::min_element(r_m.begin(), r_m.end());
        if (sc.cost.delta_c * max_s > 1.0 + sc.cost.eta * min_r) {
            issues.push_back({"cost", "cost may clamp at zero", Severity::Warning});
        }
    }

    ValidationReport report;
    report.issues = std::move(issues);
    report.ok = std::none_of(report.issues.begin(), report.issues.end(),
                             [](const ValidationIssue& i) { return i.severity == Severity::Error; });
    return report;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "urban",        "rural",         "high-income",   "low-income",
        "active",       "sedentary",     "balanced-diet", "high-fat-diet",
        "high-social",  "low-social",    "high-pollution", "low-pollution",
    };
    return names;
}

Scenario preset(const std::string& name) {
    Scenario sc = base_preset(name);
    if (name == "urban") {
        set_constant(sc.signals.e, 2.5);   // denser, more polluted environment
        set_constant(sc.signals.s_c, 1.3); // denser service network
    } else if (name == "rural") {
        set_constant(sc.signals.e, 0.8);
        set_constant(sc.signals.s_c, 0.9);
    } else if (name == "high-income") {
        sc.cost.c0 = 1.0;
        set_constant(sc.signals.r_m, 2.0);
    } else if (name == "low-income") {
        sc.cost.c0 = 3.0;
        set_constant(sc.signals.r_m, 0.6);
    } else if (name == "active") {
        sc.dynamics.alpha = 1.3;
        sc.h0 = 60.0;
    } else if (name == "sedentary") {
        sc.dynamics.alpha = 0.7;
        sc.dynamics.beta = 0.5;
        sc.h0 = 50.0;
    } else if (name == "balanced-diet") {
        sc.dynamics.beta = 0.3;
    } else if (name == "high-fat-diet") {
        sc.dynamics.beta = 0.6;
        sc.cost.c0 = 2.5;
    } else if (name == "high-social") {
        set_constant(sc.signals.s_c, 2.0);
    } else if (name == "low-social") {
        set_constant(sc.signals.s_c, 0.4);
    } else if (name == "high-pollution") {
        set_constant(sc.signals.e, 4.0);
    } else if (name == "low-pollution") {
        set_constant(sc.signals.e, 0.5);
    } else {
        throw std::invalid_argument("unknown preset name '" + name + "'");
    }
    return sc;
}

}  // namespace caresim
