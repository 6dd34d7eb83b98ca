#include "alphagate/hypothesis.hpp"

#include "alphagate/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace alphagate {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

HypothesisId::HypothesisId(std::string token) : token_(std::move(token)) {
    if (token_.empty()) {
        throw ValidationError("EmptyId", "hypothesis id must be non-empty");
    }
}

std::string_view to_string(TestingMode mode) {
    switch (mode) {
    case TestingMode::Individual: return "individual";
    case TestingMode::Disjunction: return "disjunction";
    case TestingMode::Conjunction: return "conjunction";
    }
    return "?";
}

std::string_view to_string(Method method) {
    switch (method) {
    case Method::None: return "none";
    case Method::Bonferroni: return "bonferroni";
    case Method::Sidak: return "sidak";
    case Method::Holm: return "holm";
    case Method::Hochberg: return "hochberg";
    case Method::BenjaminiHochberg: return "bh";
    }
    return "?";
}

std::optional<TestingMode> parse_testing_mode(std::string_view text) {
    const auto t = lower(text);
    if (t == "individual") return TestingMode::Individual;
    if (t == "disjunction") return TestingMode::Disjunction;
    if (t == "conjunction") return TestingMode::Conjunction;
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view text) {
    const auto t = lower(text);
    if (t == "none") return Method::None;
    if (t == "bonferroni") return Method::Bonferroni;
    if (t == "sidak" || t == "dunn-sidak") return Method::Sidak;
    if (t == "holm") return Method::Holm;
    if (t == "hochberg") return Method::Hochberg;
    if (t == "bh" || t == "fdr" || t == "benjamini-hochberg" || t == "benjaminihochberg") {
        return Method::BenjaminiHochberg;
    }
    return std::nullopt;
}

ValidationReport validate_family(const FamilySpec& spec) {
    ValidationReport report;
    if (spec.constituents.empty()) {
        report.errors.push_back({"EmptyFamily", "family '" + spec.joint_id.str() +
                                                    "' has no constituent hypotheses"});
    }
    std::set<std::string> seen;
    for (const auto& id : spec.constituents) {
        if (!seen.insert(id.str()).second) {
            report.errors.push_back(
                {"DuplicateConstituent", "constituent '" + id.str() + "' is listed more than once"});
        }
    }
    if (spec.mode == TestingMode::Individual) {
        report.errors.push_back(
            {"InvalidMode", "a family must use disjunction or conjunction testing"});
    }
    if (spec.mode == TestingMode::Disjunction && !spec.exchangeable) {
        report.warnings.push_back(
            {"NotExchangeable",
             "constituents must be theoretically exchangeable: any one significant result has "
             "to support the joint claim on equal footing"});
    }
    return report;
}

TestBattery::TestBattery(std::vector<BatteryEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw ValidationError("InvalidBattery", "battery has no entries");
    }
    std::set<std::string> seen;
    p_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (!seen.insert(e.id.str()).second) {
            throw ValidationError("InvalidBattery", "entry " + std::to_string(i + 1) +
                                                        ": duplicate id '" + e.id.str() + "'");
        }
        if (!(e.p >= 0.0 && e.p <= 1.0)) {
            throw ValidationError("InvalidBattery", "entry " + std::to_string(i + 1) + " ('" +
                                                        e.id.str() + "'): p must lie in [0, 1]");
        }
        p_.push_back(e.p);
    }
}

AlphaConfig::AlphaConfig(double alpha_joint, Method method, TestingMode mode)
    : alpha_joint_(alpha_joint), method_(method), mode_(mode) {
    if (!(alpha_joint > 0.0 && alpha_joint < 1.0)) {
        throw ValidationError("InvalidAlphaConfig", "alpha_joint must lie in (0, 1)");
    }
    if (mode == TestingMode::Disjunction && method == Method::None) {
        throw ValidationError("InvalidAlphaConfig",
                              "disjunction testing requires an adjustment method");
    }
    if (mode != TestingMode::Disjunction && method != Method::None) {
        throw ValidationError("InvalidAlphaConfig",
                              std::string(to_string(mode)) + " testing takes no alpha adjustment");
    }
}

Recommendation classify_testing_mode(const ClassificationInput& in) {
    Recommendation rec;
    if (!in.statistical_claim) {
        rec.rationale.push_back({"NO_STATISTICAL_CLAIM",
                                 "no statistical claim is made, so no error rate needs control"});
        return rec;
    }
    if (!in.joint_inference) {
        rec.mode = TestingMode::Individual;
        rec.rationale.push_back(
            {"NO_JOINT_INFERENCE",
             "each hypothesis gets its own decision; per-test alpha stays at its nominal level"});
        return rec;
    }
    if (!in.family_theoretically_relevant) {
        rec.mode = TestingMode::Individual;
        rec.rationale.push_back(
            {"HEAP_OF_HYPOTHESES",
             "the constituents do not form a theoretically meaningful joint hypothesis; treating "
             "them as individual tests (override deliberately if the family is intended)",
             true});
        return rec;
    }
    if (in.all_constituents_required) {
        rec.mode = TestingMode::Conjunction;
        rec.rationale.push_back(
            {"ALL_CONSTITUENTS_REQUIRED",
             "the joint claim needs every constituent test to be significant; the joint Type I "
             "rate cannot exceed the per-test alpha, so no adjustment is needed"});
        return rec;
    }
    rec.mode = TestingMode::Disjunction;
    rec.adjust_alpha = true;
    rec.rationale.push_back(
        {"ANY_CONSTITUENT_SUFFICES",
         "one significant constituent suffices to reject the joint null; the familywise error "
         "rate grows with k, so per-test alpha must be adjusted"});
    if (!in.exchangeable) {
        rec.rationale.push_back(
            {"NOT_EXCHANGEABLE",
             "constituents are not declared exchangeable; a significant constituent may not "
             "support the joint claim",
             true});
    }
    return rec;
}

} // namespace alphagate
