#include <stdexcept>
#include <string>

#include "caresim/market.hpp"
#include "caresim/report.hpp"
#include "caresim/version.hpp"
#include "doctest.h"

using namespace caresim;

TEST_CASE("bundled fixture carries the survey tables verbatim") {
    const auto& fixture = default_market_fixture();
    REQUIRE(fixture.features.size() == 4);
    REQUIRE(fixture.conditions.size() == 4);

    CHECK(fixture.features[0].feature == "Real-time Monitoring");
    CHECK(fixture.features[0].importance == 90);
    CHECK(fixture.features[0].availability == 70);
    CHECK(fixture.features[0].difficulty == 4);
    CHECK(fixture.features[0].expected_coverage == 95);

    CHECK(fixture.features[1].feature == "Predictive Accuracy");
    CHECK(fixture.features[1].importance == 85);
    CHECK(fixture.features[1].availability == 60);
    CHECK(fixture.features[1].difficulty == 5);
    CHECK(fixture.features[1].expected_coverage == 90);

    CHECK(fixture.features[2].feature == "User Satisfaction");
    CHECK(fixture.features[2].importance == 78);
    CHECK(fixture.features[2].availability == 65);
    CHECK(fixture.features[2].difficulty == 3);
    CHECK(fixture.features[2].expected_coverage == 85);

    CHECK(fixture.features[3].feature == "Cost-effectiveness");
    CHECK(fixture.features[3].importance == 80);
    CHECK(fixture.features[3].availability == 55);
    CHECK(fixture.features[3].difficulty == 4);
    CHECK(fixture.features[3].expected_coverage == 88);

    CHECK(fixture.conditions[0].condition == "Cardiovascular");
    CHECK(fixture.conditions[0].population_affected == 35);
    CHECK(fixture.conditions[0].service_coverage == 65);
    CHECK(fixture.conditions[0].mortality == 15);
    CHECK(fixture.conditions[0].personalization_needs == 70);

    CHECK(fixture.conditions[1].condition == "Respiratory");
    CHECK(fixture.conditions[1].population_affected == 20);
    CHECK(fixture.conditions[1].service_coverage == 50);
    CHECK(fixture.conditions[1].mortality == 12);
    CHECK(fixture.conditions[1].personalization_needs == 60);

    CHECK(fixture.conditions[2].condition == "Diabetes");
    CHECK(fixture.conditions[2].population_affected == 15);
    CHECK(fixture.conditions[2].service_coverage == 40);
    CHECK(fixture.conditions[2].mortality == 8);
    CHECK(fixture.conditions[2].personalization_needs == 55);

    CHECK(fixture.conditions[3].condition == "Mobility Issues");
    CHECK(fixture.conditions[3].population_affected == 30);
    CHECK(fixture.conditions[3].service_coverage == 55);
    CHECK(fixture.conditions[3].mortality == 10);
    CHECK(fixture.conditions[3].personalization_needs == 65);

    CHECK_NOTHROW(validate_market_fixture(fixture));
}

TEST_CASE("gap analysis sorts descending and computes the derived columns") {
    const auto report = market_gap_report(default_market_fixture());
    REQUIRE(report.features.size() == 4);
    // gaps: PA 25, CE 25, RTM 20, US 13; ties keep fixture order
    CHECK(report.features[0].row.feature == "Predictive Accuracy");
    CHECK(report.features[0].gap == 25);
    CHECK(report.features[1].row.feature == "Cost-effectiveness");
    CHECK(report.features[1].gap == 25);
    CHECK(report.features[2].row.feature == "Real-time Monitoring");
    CHECK(report.features[2].gap == 20);
    CHECK(report.features[3].row.feature == "User Satisfaction");
    CHECK(report.features[3].gap == 13);

    REQUIRE(report.conditions.size() == 4);
    CHECK(report.conditions[0].row.condition == "Diabetes");
    CHECK(report.conditions[0].unmet_coverage == 60);
    CHECK(report.conditions[1].row.condition == "Respiratory");
    CHECK(report.conditions[1].unmet_coverage == 50);
    CHECK(report.conditions[2].row.condition == "Mobility Issues");
    CHECK(report.conditions[2].unmet_coverage == 45);
    CHECK(report.conditions[3].row.condition == "Cardiovascular");
    CHECK(report.conditions[3].unmet_coverage == 35);
}

TEST_CASE("all gaps vanish when availability matches importance") {
    MarketFixture fixture = default_market_fixture();
    for (auto& f : fixture.features) {
        f.availability = f.importance;
    }
    const auto report = market_gap_report(fixture);
    for (const auto& f : report.features) {
        CHECK(f.gap == 0);
    }
}

TEST_CASE("fixture parsing round trips and rejects junk") {
    const std::string text = R"({
      "features": [
        {"feature": "A", "importance": 50, "availability": 25, "difficulty": 2,
         "expected_coverage": 60}
      ],
      "conditions": [
        {"condition": "B", "population_affected": 10, "service_coverage": 30,
         "mortality": 5, "personalization_needs": 40}
      ]
    })";
    const auto fixture = parse_market_fixture(text);
    REQUIRE(fixture.features.size() == 1);
    CHECK(fixture.features[0].importance == 50);
    REQUIRE(fixture.conditions.size() == 1);
    CHECK(fixture.conditions[0].service_coverage == 30);

    CHECK_THROWS_AS(parse_market_fixture("{oops"), ParseError);
    CHECK_THROWS_AS(parse_market_fixture(R"({"features": []})"), ParseError);
    CHECK_THROWS_AS(parse_market_fixture(R"({"features": [{"feature": 1}], "conditions": []})"),
                    ParseError);
}

TEST_CASE("fixture validation enforces ranges") {
    MarketFixture fixture = default_market_fixture();
    fixture.features[0].importance = 150;
    CHECK_THROWS_AS(validate_market_fixture(fixture), std::invalid_argument);

    fixture = default_market_fixture();
    fixture.features[0].difficulty = 0;
    CHECK_THROWS_AS(validate_market_fixture(fixture), std::invalid_argument);

    fixture = default_market_fixture();
    fixture.conditions[0].mortality = -1;
    CHECK_THROWS_AS(validate_market_fixture(fixture), std::invalid_argument);
}

TEST_CASE("run reports round trip byte-identically") {
    RunReport report;
    report.scenario = "rural";
    report.trajectory_file = "rural_trajectory.csv";
    report.alerts_file = "rural_alerts.csv";
    CostBenefitReport cb;
    cb.e_h = -7.25;
    cb.e_s = 5.0;
    cb.e_e = 5.0;
    cb.total_benefit = -0.625;
    cb.c_d = 10.0;
    cb.c_o = 98.4;
    cb.c_m = 4.0;
    cb.total_cost = 44.16;
    cb.cbr = -0.01415;
    report.cost_benefit = cb;
    report.version = kVersion;
    report.seed = 7;

    const std::string text = serialize_report(report);
    const RunReport back = parse_report(text);
    CHECK(serialize_report(back) == text);
    CHECK(back.scenario == "rural");
    REQUIRE(back.cost_benefit.has_value());
    CHECK(back.cost_benefit->c_o == 98.4);
    CHECK_FALSE(back.allocation.has_value());

    // allocation-only report round trips too
    RunReport plan_report;
    plan_report.scenario = "specs";
    AllocationPlan plan;
    plan.amounts = {1.5, 2.5};
    plan.total_utility = 3.75;
    plan.multiplier = 0.25;
    plan.method = AllocationMethod::KktBisection;
    plan_report.allocation = plan;
    plan_report.version = kVersion;
    plan_report.seed = 0;
    const std::string plan_text = serialize_report(plan_report);
    const RunReport plan_back = parse_report(plan_text);
    CHECK(serialize_report(plan_back) == plan_text);
    REQUIRE(plan_back.allocation.has_value());
    CHECK(plan_back.allocation->amounts == plan.amounts);
    CHECK(plan_back.allocation->method == AllocationMethod::KktBisection);

    CHECK_THROWS_AS(parse_report("{broken"), ParseError);
    CHECK_THROWS_AS(parse_report(R"({"scenario": "x"})"), ParseError);
}
