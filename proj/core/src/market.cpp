#include "caresim/market.hpp"

#include <algorithm>
#include <stdexcept>

#include "caresim/errors.hpp"
#include "json.hpp"

namespace caresim {

namespace {

using json = nlohmann::ordered_json;

double number_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw ParseError("market fixture: expected number '" + std::string(key) + "' in " + where);
    }
    return obj.at(key).get<double>();
}

std::string string_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw ParseError("market fixture: expected string '" + std::string(key) + "' in " + where);
    }
    return obj.at(key).get<std::string>();
}

void check_percent(double v, const std::string& what) {
    if (v < 0.0 || v > 100.0) {
        throw std::invalid_argument("market fixture: " + what + " must lie in [0, 100]");
    }
}

}  // namespace

const MarketFixture& default_market_fixture() {
    static const MarketFixture fixture{
        {
            {"Real-time Monitoring", 90, 70, 4, 95},
            {"Predictive Accuracy", 85, 60, 5, 90},
            {"User Satisfaction", 78, 65, 3, 85},
            {"Cost-effectiveness", 80, 55, 4, 88},
        },
        {
            {"Cardiovascular", 35, 65, 15, 70},
            {"Respiratory", 20, 50, 12, 60},
            {"Diabetes", 15, 40, 8, 55},
            {"Mobility Issues", 30, 55, 10, 65},
        },
    };
    return fixture;
}

MarketFixture parse_market_fixture(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("market fixture: syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("features") || !doc.contains("conditions") ||
        !doc.at("features").is_array() || !doc.at("conditions").is_array()) {
        throw ParseError("market fixture: expected object with 'features' and 'conditions' arrays");
    }

    MarketFixture fixture;
    for (const auto& f : doc.at("features")) {
        FeatureRow row;
        row.feature = string_at(f, "feature", "features");
        row.importance = number_at(f, "importance", "features");
        row.availability = number_at(f, "availability", "features");
        row.difficulty = number_at(f, "difficulty", "features");
        row.expected_coverage = number_at(f, "expected_coverage", "features");
        fixture.features.push_back(std::move(row));
    }
    for (const auto& c : doc.at("conditions")) {
        ConditionRow row;
        row.condition = string_at(c, "condition", "conditions");
        row.population_affected = number_at(c, "population_affected", "conditions");
        row.service_coverage = number_at(c, "service_coverage", "conditions");
        row.mortality = number_at(c, "mortality", "conditions");
        row.personalization_needs = number_at(c, "personalization_needs", "conditions");
        fixture.conditions.push_back(std::move(row));
    }
    return fixture;
}

void validate_market_fixture(const MarketFixture& fixture) {
    for (const auto& f : fixture.features) {
        check_percent(f.importance, "importance of '" + f.feature + "'");
        check_percent(f.availability, "availability of '" + f.feature + "'");
        check_percent(f.expected_coverage, "expected_coverage of '" + f.feature + "'");
        if (f.difficulty < 1.0 || f.difficulty > 5.0) {
            throw std::invalid_argument("market fixture: difficulty of '" + f.feature +
                                        "' must lie in [1, 5]");
        }
    }
    for (const auto& c : fixture.conditions) {
        check_percent(c.population_affected, "population_affected of '" + c.condition + "'");
        check_percent(c.service_coverage, "service_coverage of '" + c.condition + "'");
        check_percent(c.mortality, "mortality of '" + c.condition + "'");
        check_percent(c.personalization_needs, "personalization_needs of '" + c.condition + "'");
    }
}

MarketGapReport market_gap_report(const MarketFixture& fixture) {
    MarketGapReport report;
    for (const auto& f : fixture.features) {
        report.features.push_back({f, f.importance - f.availability});
    }
    for (const auto& c : fixture.conditions) {
        report.conditions.push_back({c, 100.0 - c.service_coverage});
    }
    std::stable_sort(report.features.begin(), report.features.end(),
                     [](const auto& a, const auto& b) { return a.gap > b.gap; });
    std::stable_sort(report.conditions.begin(), report.conditions.end(),
                     [](const auto& a, const auto& b) { return a.unmet_coverage > b.unmet_coverage; });
    return report;
}

}  // namespace caresim
