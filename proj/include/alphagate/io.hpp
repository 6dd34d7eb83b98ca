#pragma once

// File formats: the `id,p` battery CSV and the scenario JSON document.

#include "alphagate/hypothesis.hpp"
#include "alphagate/simulate.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

namespace alphagate::io {

/// CSV with header `id,p`, one row per hypothesis. Blank lines are skipped
/// and CRLF is accepted. Errors are ValidationError("InvalidBattery") with
/// "<source>:<line>:" prefixes.
TestBattery parse_battery_csv(std::istream& in, std::string_view source = "<battery>");
TestBattery read_battery_csv(const std::filesystem::path& path);

struct ScenarioFile {
    std::optional<FamilySpec> family;
    std::optional<AlphaConfig> alpha;
    /// Complete scenario: k from the family, alpha_joint from `alpha`, and
    /// the disjunction procedure resolved (see resolve_disjunction_method).
    std::optional<sim::Scenario> simulation;
    std::optional<ClassificationInput> classification;
    /// simulation.seed was given explicitly (ALPHAGATE_SEED must not override it).
    bool seed_from_file = false;
    /// Non-fatal findings, e.g. validate_family warnings.
    std::vector<Issue> warnings;
};

/// Tool default when no procedure is named: Sidak for declared-independent
/// families, Bonferroni otherwise.
Method default_disjunction_method(bool independent) noexcept;

/// Unknown keys, wrong types and every domain invariant are rejected as
/// ValidationError("InvalidScenarioFile") with "<source>:<line>: <pointer>:"
/// prefixes.
ScenarioFile parse_scenario_json(std::string_view text, std::string_view source = "<scenario>");
ScenarioFile read_scenario_file(const std::filesystem::path& path);

} // namespace alphagate::io
