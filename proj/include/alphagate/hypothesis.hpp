#pragma once

// Domain vocabulary: hypotheses, families, batteries, alpha configurations
// and the "which testing mode, and do I adjust?" classifier.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alphagate {

class HypothesisId {
public:
    /// Throws ValidationError("EmptyId") for an empty token.
    explicit HypothesisId(std::string token);

    const std::string& str() const noexcept { return token_; }

    friend bool operator==(const HypothesisId&, const HypothesisId&) = default;
    friend auto operator<=>(const HypothesisId&, const HypothesisId&) = default;

private:
    std::string token_;
};

enum class TestingMode { Individual, Disjunction, Conjunction };

enum class Method { None, Bonferroni, Sidak, Holm, Hochberg, BenjaminiHochberg };

std::string_view to_string(TestingMode mode);
std::string_view to_string(Method method);
/// Case-insensitive; accepts "bh" and "fdr" for BenjaminiHochberg.
std::optional<TestingMode> parse_testing_mode(std::string_view text);
std::optional<Method> parse_method(std::string_view text);

/// True for the procedures that control the familywise error rate.
constexpr bool controls_fwer(Method m) noexcept {
    return m == Method::Bonferroni || m == Method::Sidak || m == Method::Holm ||
           m == Method::Hochberg;
}

struct FamilySpec {
    HypothesisId joint_id;
    std::vector<HypothesisId> constituents;
    TestingMode mode;
    bool exchangeable;
    bool independent;

    std::size_t k() const noexcept { return constituents.size(); }
};

struct Issue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

/// Structural checks on a declared family. Duplicate constituents and empty
/// families are errors; a non-exchangeable disjunction family is a warning.
ValidationReport validate_family(const FamilySpec& spec);

struct BatteryEntry {
    HypothesisId id;
    double p;
};

/// Ordered (id, p) pairs. Ids are unique and every p lies in [0, 1].
class TestBattery {
public:
    /// Throws ValidationError("InvalidBattery") naming the offending entry.
    explicit TestBattery(std::vector<BatteryEntry> entries);

    const std::vector<BatteryEntry>& entries() const noexcept { return entries_; }
    const std::vector<double>& p_values() const noexcept { return p_; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::vector<BatteryEntry> entries_;
    std::vector<double> p_;
};

/// Joint-level alpha plus the adjustment method for the mode it serves.
/// None is mandatory for Individual and Conjunction; Disjunction needs a
/// real method.
class AlphaConfig {
public:
    /// Throws ValidationError("InvalidAlphaConfig").
    AlphaConfig(double alpha_joint, Method method, TestingMode mode);

    double alpha_joint() const noexcept { return alpha_joint_; }
    Method method() const noexcept { return method_; }
    TestingMode mode() const noexcept { return mode_; }

private:
    double alpha_joint_;
    Method method_;
    TestingMode mode_;
};

struct ClassificationInput {
    bool statistical_claim;
    bool joint_inference;
    bool all_constituents_required;
    bool exchangeable;
    bool family_theoretically_relevant;
};

struct Rationale {
    std::string code;
    std::string text;
    bool warning = false;
};

struct Recommendation {
    /// Empty when no statistical claim is being made.
    std::optional<TestingMode> mode;
    bool adjust_alpha = false;
    std::vector<Rationale> rationale;
};

Recommendation classify_testing_mode(const ClassificationInput& input);

} // namespace alphagate
