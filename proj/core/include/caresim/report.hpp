#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "caresim/allocation.hpp"
#include "caresim/economics.hpp"

namespace caresim {

/// Persisted summary of one command invocation. File references are plain
/// names relative to the report's own directory. Serialization is stable:
/// loading a written report and re-serializing it reproduces the bytes.
struct RunReport {
    std::string scenario;
    std::string trajectory_file;
    std::string alerts_file;
    std::optional<CostBenefitReport> cost_benefit;
    std::optional<AllocationPlan> allocation;
    std::string version;
    std::uint64_t seed = 0;
};

std::string serialize_report(const RunReport& report);
RunReport parse_report(const std::string& text);

}  // namespace caresim
