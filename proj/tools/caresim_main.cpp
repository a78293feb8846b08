// caresim: deterministic health-scenario simulation and analysis CLI.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation error,
// 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "caresim/detection.hpp"
#include "caresim/economics.hpp"
#include "caresim/errors.hpp"
#include "caresim/imputation.hpp"
#include "caresim/io.hpp"
#include "caresim/market.hpp"
#include "caresim/report.hpp"
#include "caresim/runner.hpp"
#include "caresim/scenario.hpp"
#include "caresim/version.hpp"

namespace fs = std::filesystem;
using namespace caresim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
};

void print_issues(const ValidationReport& report) {
    for (const auto& issue : report.issues) {
        std::cerr << (issue.severity == Severity::Error ? "error" : "warning") << " at "
                  << issue.path << ": " << issue.message << "\n";
    }
}

fs::path ensure_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    if (!dir.empty()) {
        fs::create_directories(dir);
    }
    return dir;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string scenario_file;
    std::string preset_name;
    std::string detector = "cusum";
    double cusum_drift = 0.5;
    double cusum_threshold = 10.0;
    int cusum_window = 10;
    double max_abs_slope = 25.0;
};

int cmd_simulate(const GlobalOptions& global, const SimulateArgs& args) {
    Scenario scenario;
    if (!args.preset_name.empty()) {
        scenario = preset(args.preset_name);
    } else {
        scenario = parse_scenario(read_file(args.scenario_file));
    }
    if (global.seed.has_value()) {
        scenario.seed = *global.seed;
    }

    const ValidationReport report = validate(scenario);
    print_issues(report);
    if (!report.ok) {
        return kExitValidation;
    }

    std::optional<DetectorConfig> detector;
    if (args.detector == "cusum") {
        detector = DetectorConfig{DetectorMethod::Cusum,
                                  {args.cusum_drift, args.cusum_threshold, args.cusum_window},
                                  {args.max_abs_slope}};
    } else if (args.detector == "rate") {
        detector = DetectorConfig{DetectorMethod::RateThreshold,
                                  {args.cusum_drift, args.cusum_threshold, args.cusum_window},
                                  {args.max_abs_slope}};
    } else if (args.detector != "none") {
        throw std::invalid_argument("unknown detector '" + args.detector + "'");
    }

    const RunResult result = run_scenario(scenario, detector);

    const fs::path dir = ensure_out_dir(global.out_dir);
    const std::string trajectory_name = scenario.name + "_trajectory.csv";
    const std::string alerts_name = scenario.name + "_alerts.csv";
    const std::string report_name = scenario.name + "_report.json";

    RunReport run_report;
    run_report.scenario = scenario.name;
    run_report.trajectory_file = trajectory_name;
    run_report.alerts_file = alerts_name;
    run_report.cost_benefit = result.cost_benefit;
    run_report.version = kVersion;
    run_report.seed = scenario.seed;

    atomic_write_file(dir / trajectory_name, trajectory_to_csv(result.trajectory));
    atomic_write_file(dir / alerts_name, alerts_to_csv(result.alerts));
    atomic_write_file(dir / report_name, serialize_report(run_report));

    std::cout << "wrote " << (dir / trajectory_name).string() << "\n"
              << "wrote " << (dir / alerts_name).string() << "\n"
              << "wrote " << (dir / report_name).string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- optimize

std::vector<UtilitySpec> parse_utility_specs(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("utility specs: syntax error: ") + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw ParseError("utility specs: expected a nonempty array of specs");
    }
    std::vector<UtilitySpec> specs;
    for (const auto& j : doc) {
        if (!j.is_object()) {
            throw ParseError("utility specs: each entry must be an object");
        }
        for (const auto& item : j.items()) {
            if (item.key() != "a" && item.key() != "b" && item.key() != "theta" &&
                item.key() != "delta_u") {
                throw ParseError("utility specs: unknown field '" + item.key() + "'");
            }
        }
        UtilitySpec spec;
        spec.a = j.value("a", 1.0);
        spec.b = j.value("b", 0.0);
        spec.theta = j.value("theta", 1.0);
        spec.delta_u = j.value("delta_u", 1.0);
        specs.push_back(spec);
    }
    return specs;
}

int cmd_optimize(const GlobalOptions& global, const std::string& specs_file, double budget) {
    const auto specs = parse_utility_specs(read_file(specs_file));
    const AllocationPlan plan = optimize_budget(specs, budget);

    std::string amounts;
    for (std::size_t i = 0; i < plan.amounts.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", plan.amounts[i]);
        if (i > 0) {
            amounts += ", ";
        }
        amounts += buf;
    }
    std::cout << "amounts: " << amounts << "\n";
    std::cout << "total_utility: " << format_double(plan.total_utility) << "\n";
    std::cout << "multiplier: "
              << (plan.multiplier.has_value() ? format_double(*plan.multiplier) : "none") << "\n";
    std::cout << "method: " << to_string(plan.method) << "\n";

    RunReport run_report;
    run_report.scenario = stem_of(specs_file);
    run_report.allocation = plan;
    run_report.version = kVersion;
    run_report.seed = global.seed.value_or(0);
    const fs::path dir = ensure_out_dir(global.out_dir);
    const fs::path report_path = dir / (stem_of(specs_file) + "_allocation.json");
    atomic_write_file(report_path, serialize_report(run_report));
    std::cout << "wrote " << report_path.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- impute

struct ImputeArgs {
    std::string series_file;
    std::string output;
    int short_gap_max = 5;
    std::string long_gap = "hold-last";
    std::optional<double> length_scale;
    std::optional<double> signal_variance;
    std::optional<double> noise_variance;
};

int cmd_impute(const GlobalOptions& global, const ImputeArgs& args) {
    GapPolicy policy;
    policy.short_gap_max = args.short_gap_max;
    if (args.long_gap == "hold-last") {
        policy.long_gap_fill = LongGapFill::HoldLast;
    } else if (args.long_gap == "series-mean") {
        policy.long_gap_fill = LongGapFill::SeriesMean;
    } else if (args.long_gap == "leave-missing") {
        policy.long_gap_fill = LongGapFill::LeaveMissing;
    } else {
        throw std::invalid_argument("unknown long-gap policy '" + args.long_gap + "'");
    }

    std::optional<GpKernel> kernel;
    if (args.length_scale.has_value() || args.signal_variance.has_value()) {
        GpKernel k;
        k.length_scale = args.length_scale.value_or(1.0);
        k.signal_variance = args.signal_variance.value_or(1.0);
        kernel = k;
    }

    const std::string filled =
        fill_gaps_csv(read_file(args.series_file), policy, kernel, args.noise_variance);

    fs::path out_path;
    if (!args.output.empty()) {
        out_path = args.output;
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
    } else {
        out_path = ensure_out_dir(global.out_dir) / (stem_of(args.series_file) + "_filled.csv");
    }
    atomic_write_file(out_path, filled);
    std::cout << "wrote " << out_path.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
    std::string series_file;
    std::string method = "cusum";
    std::string output;
    double cusum_drift = 0.5;
    double cusum_threshold = 5.0;
    int cusum_window = 10;
    double max_abs_slope = 25.0;
};

int cmd_detect(const GlobalOptions& global, const DetectArgs& args) {
    const TimeSeries series =
        parse_timeseries_csv(read_file(args.series_file), stem_of(args.series_file));

    DetectorConfig cfg;
    cfg.cusum = {args.cusum_drift, args.cusum_threshold, args.cusum_window};
    cfg.rate = {args.max_abs_slope};

    std::vector<Alert> alerts;
    if (args.method == "cusum") {
        cfg.method = DetectorMethod::Cusum;
        alerts = detect_cusum(series, cfg);
    } else if (args.method == "rate") {
        cfg.method = DetectorMethod::RateThreshold;
        std::vector<double> values(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (!series.values[i].has_value()) {
                throw std::invalid_argument("detect: series has missing values; impute first");
            }
            values[i] = *series.values[i];
        }
        alerts = detect_rate(series.times, values, cfg);
    } else {
        throw std::invalid_argument("unknown detector '" + args.method + "'");
    }

    fs::path out_path;
    if (!args.output.empty()) {
        out_path = args.output;
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
    } else {
        out_path = ensure_out_dir(global.out_dir) / (stem_of(args.series_file) + "_alerts.csv");
    }
    atomic_write_file(out_path, alerts_to_csv(alerts));
    std::cout << "wrote " << out_path.string() << " (" << alerts.size() << " alerts)\n";
    return kExitOk;
}

// ---------------------------------------------------------------- market

std::string features_csv(const MarketGapReport& report) {
    std::string out = "feature,importance,availability,difficulty,expected_coverage,gap\n";
    for (const auto& f : report.features) {
        out += f.row.feature + ',' + format_double(f.row.importance) + ',' +
               format_double(f.row.availability) + ',' + format_double(f.row.difficulty) + ',' +
               format_double(f.row.expected_coverage) + ',' + format_double(f.gap) + '\n';
    }
    return out;
}

std::string conditions_csv(const MarketGapReport& report) {
    std::string out =
        "condition,population_affected,service_coverage,mortality,personalization_needs,"
        "unmet_coverage\n";
    for (const auto& c : report.conditions) {
        out += c.row.condition + ',' + format_double(c.row.population_affected) + ',' +
               format_double(c.row.service_coverage) + ',' + format_double(c.row.mortality) +
               ',' + format_double(c.row.personalization_needs) + ',' +
               format_double(c.unmet_coverage) + '\n';
    }
    return out;
}

int cmd_market_report(const GlobalOptions& global, const std::string& fixture_file) {
    MarketFixture fixture =
        fixture_file.empty() ? default_market_fixture() : parse_market_fixture(read_file(fixture_file));
    try {
        validate_market_fixture(fixture);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    const MarketGapReport report = market_gap_report(fixture);
    if (global.format == "structured") {
        nlohmann::ordered_json doc;
        doc["features"] = nlohmann::ordered_json::array();
        for (const auto& f : report.features) {
            doc["features"].push_back({{"feature", f.row.feature},
                                       {"importance", f.row.importance},
                                       {"availability", f.row.availability},
                                       {"difficulty", f.row.difficulty},
                                       {"expected_coverage", f.row.expected_coverage},
                                       {"gap", f.gap}});
        }
        doc["conditions"] = nlohmann::ordered_json::array();
        for (const auto& c : report.conditions) {
            doc["conditions"].push_back({{"condition", c.row.condition},
                                         {"population_affected", c.row.population_affected},
                                         {"service_coverage", c.row.service_coverage},
                                         {"mortality", c.row.mortality},
                                         {"personalization_needs", c.row.personalization_needs},
                                         {"unmet_coverage", c.unmet_coverage}});
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << features_csv(report) << "\n" << conditions_csv(report);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic health-scenario simulation and analysis toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--out-dir", global.out_dir, "output directory (default '.')")
        ->envname("CARESIM_OUT_DIR");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the scenario seed");
    app.add_option("--format", global.format, "stdout format for tabular commands")
        ->check(CLI::IsMember({"csv", "structured"}));

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate a scenario file or preset");
    simulate->add_option("scenario", sim.scenario_file, "scenario document (JSON)");
    simulate->add_option("--preset", sim.preset_name, "named preset scenario");
    simulate->add_option("--detector", sim.detector, "cusum, rate, or none");
    simulate->add_option("--cusum-drift", sim.cusum_drift, "CUSUM drift k");
    simulate->add_option("--cusum-threshold", sim.cusum_threshold, "CUSUM alarm threshold");
    simulate->add_option("--cusum-window", sim.cusum_window, "CUSUM calibration window");
    simulate->add_option("--max-abs-slope", sim.max_abs_slope, "rate-detector slope limit");

    std::string specs_file;
    double budget = 0.0;
    auto* optimize = app.add_subcommand("optimize", "budget-constrained utility maximization");
    optimize->add_option("specs", specs_file, "utility specs document (JSON array)")->required();
    optimize->add_option("--budget", budget, "total resource budget")->required();

    ImputeArgs impute;
    auto* impute_cmd = app.add_subcommand("impute", "fill gaps in a time-series CSV");
    impute_cmd->add_option("series", impute.series_file, "series CSV (time,value)")->required();
    impute_cmd->add_option("-o,--output", impute.output, "output CSV path");
    impute_cmd->add_option("--short-gap-max", impute.short_gap_max,
                           "longest run filled by interpolation");
    impute_cmd->add_option("--long-gap", impute.long_gap,
                           "hold-last, series-mean, or leave-missing");
    double ls = 0.0, sv = 0.0, nv = 0.0;
    auto* ls_opt = impute_cmd->add_option("--length-scale", ls, "kernel length scale");
    auto* sv_opt = impute_cmd->add_option("--signal-variance", sv, "kernel signal variance");
    auto* nv_opt = impute_cmd->add_option("--noise-variance", nv, "observation noise variance");

    DetectArgs detect;
    auto* detect_cmd = app.add_subcommand("detect", "flag sudden changes in a series CSV");
    detect_cmd->add_option("series", detect.series_file, "series CSV (time,value)")->required();
    detect_cmd->add_option("--method", detect.method, "cusum or rate");
    detect_cmd->add_option("-o,--output", detect.output, "output alerts CSV path");
    detect_cmd->add_option("--cusum-drift", detect.cusum_drift, "CUSUM drift k");
    detect_cmd->add_option("--cusum-threshold", detect.cusum_threshold, "CUSUM alarm threshold");
    detect_cmd->add_option("--cusum-window", detect.cusum_window, "CUSUM calibration window");
    detect_cmd->add_option("--max-abs-slope", detect.max_abs_slope, "rate-detector slope limit");

    std::string fixture_file;
    auto* market = app.add_subcommand("market-report", "gap analysis over a market fixture");
    market->add_option("fixture", fixture_file, "fixture document (JSON); bundled default if omitted");

    auto* preset_list = app.add_subcommand("preset-list", "list the named preset scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (seed_opt->count() > 0) {
        global.seed = seed_value;
    }
    if (ls_opt->count() > 0) impute.length_scale = ls;
    if (sv_opt->count() > 0) impute.signal_variance = sv;
    if (nv_opt->count() > 0) impute.noise_variance = nv;

    try {
        if (simulate->parsed()) {
            if (sim.scenario_file.empty() == sim.preset_name.empty()) {
                std::cerr << "error: provide exactly one of a scenario file or --preset\n";
                return kExitUsage;
            }
            return cmd_simulate(global, sim);
        }
        if (optimize->parsed()) {
            return cmd_optimize(global, specs_file, budget);
        }
        if (impute_cmd->parsed()) {
            return cmd_impute(global, impute);
        }
        if (detect_cmd->parsed()) {
            return cmd_detect(global, detect);
        }
        if (market->parsed()) {
            return cmd_market_report(global, fixture_file);
        }
        if (preset_list->parsed()) {
            for (const auto& name : preset_names()) {
                std::cout << name << "\n";
            }
            return kExitOk;
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UndefinedCbrError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
