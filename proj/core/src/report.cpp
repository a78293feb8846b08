#include "caresim/report.hpp"

#include "caresim/errors.hpp"
#include "json.hpp"

namespace caresim {

namespace {

using json = nlohmann::ordered_json;

json cost_benefit_to_json(const CostBenefitReport& r) {
    json j;
    j["e_h"] = r.e_h;
    j["e_s"] = r.e_s;
    j["e_e"] = r.e_e;
    j["total_benefit"] = r.total_benefit;
    j["c_d"] = r.c_d;
    j["c_o"] = r.c_o;
    j["c_m"] = r.c_m;
    j["total_cost"] = r.total_cost;
    j["cbr"] = r.cbr;
    return j;
}

CostBenefitReport cost_benefit_from_json(const json& j) {
    CostBenefitReport r;
    r.e_h = j.at("e_h").get<double>();
    r.e_s = j.at("e_s").get<double>();
    r.e_e = j.at("e_e").get<double>();
    r.total_benefit = j.at("total_benefit").get<double>();
    r.c_d = j.at("c_d").get<double>();
    r.c_o = j.at("c_o").get<double>();
    r.c_m = j.at("c_m").get<double>();
    r.total_cost = j.at("total_cost").get<double>();
    r.cbr = j.at("cbr").get<double>();
    return r;
}

json allocation_to_json(const AllocationPlan& p) {
    json j;
    j["amounts"] = p.amounts;
    j["total_utility"] = p.total_utility;
    if (p.multiplier.has_value()) {
        j["multiplier"] = *p.multiplier;
    } else {
        j["multiplier"] = nullptr;
    }
    j["method"] = to_string(p.method);
    return j;
}

AllocationPlan allocation_from_json(const json& j) {
    AllocationPlan p;
    p.amounts = j.at("amounts").get<std::vector<double>>();
    p.total_utility = j.at("total_utility").get<double>();
    if (!j.at("multiplier").is_null()) {
        p.multiplier = j.at("multiplier").get<double>();
    }
    const std::string method = j.at("method").get<std::string>();
    if (method == "kkt-bisection") {
        p.method = AllocationMethod::KktBisection;
    } else if (method == "projected-gradient") {
        p.method = AllocationMethod::ProjectedGradient;
    } else if (method == "grid") {
        p.method = AllocationMethod::Grid;
    } else {
        throw ParseError("report: unknown allocation method '" + method + "'");
    }
    return p;
}

}  // namespace

std::string serialize_report(const RunReport& report) {
    json doc;
    doc["scenario"] = report.scenario;
    doc["trajectory_file"] = report.trajectory_file;
    doc["alerts_file"] = report.alerts_file;
    if (report.cost_benefit.has_value()) {
        doc["cost_benefit"] = cost_benefit_to_json(*report.cost_benefit);
    }
    if (report.allocation.has_value()) {
        doc["allocation"] = allocation_to_json(*report.allocation);
    }
    doc["version"] = report.version;
    doc["seed"] = report.seed;
    return doc.dump(2) + "\n";
}

RunReport parse_report(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report: syntax error: ") + e.what());
    }
    try {
        RunReport report;
        report.scenario = doc.at("scenario").get<std::string>();
        report.trajectory_file = doc.at("trajectory_file").get<std::string>();
        report.alerts_file = doc.at("alerts_file").get<std::string>();
        if (doc.contains("cost_benefit")) {
            report.cost_benefit = cost_benefit_from_json(doc.at("cost_benefit"));
        }
        if (doc.contains("allocation")) {
            report.allocation = allocation_from_json(doc.at("allocation"));
        }
        report.version = doc.at("version").get<std::string>();
        report.seed = doc.at("seed").get<std::uint64_t>();
        return report;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: malformed document: ") + e.what());
    }
}

}  // namespace caresim
