#pragma once

#include <string>
#include <vector>

namespace caresim {

struct FeatureRow {
    std::string feature;
    double importance = 0.0;         // percent, [0, 100]
    double availability = 0.0;       // percent, [0, 100]
    double difficulty = 1.0;         // 1..5
    double expected_coverage = 0.0;  // percent in 5 years, [0, 100]
};

struct ConditionRow {
    std::string condition;
    double population_affected = 0.0;   // percent, [0, 100]
    double service_coverage = 0.0;      // percent, [0, 100]
    double mortality = 0.0;             // percent, [0, 100]
    double personalization_needs = 0.0; // percent, [0, 100]
};

struct MarketFixture {
    std::vector<FeatureRow> features;
    std::vector<ConditionRow> conditions;
};

/// The bundled default fixture (the survey tables shipped with the tool).
const MarketFixture& default_market_fixture();

/// Parses a fixture document: {"features": [...], "conditions": [...]}.
MarketFixture parse_market_fixture(const std::string& json_text);

/// Throws std::invalid_argument when a percentage leaves [0, 100] or a
/// difficulty leaves [1, 5].
void validate_market_fixture(const MarketFixture& fixture);

struct FeatureGapRow {
    FeatureRow row;
    double gap = 0.0;  // importance - availability
};

struct ConditionGapRow {
    ConditionRow row;
    double unmet_coverage = 0.0;  // 100 - service coverage
};

/// Per-feature gaps and per-condition unmet coverage, each sorted
/// descending (ties keep fixture order).
struct MarketGapReport {
    std::vector<FeatureGapRow> features;
    std::vector<ConditionGapRow> conditions;
};

MarketGapReport market_gap_report(const MarketFixture& fixture);

}  // namespace caresim
