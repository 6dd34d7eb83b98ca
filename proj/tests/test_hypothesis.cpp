#include "alphagate/errors.hpp"
#include "alphagate/hypothesis.hpp"

#include <doctest.h>

using namespace alphagate;

namespace {

FamilySpec family(std::vector<std::string> ids, TestingMode mode, bool exchangeable = true) {
    std::vector<HypothesisId> constituents;
    for (auto& id : ids) constituents.emplace_back(id);
    return {HypothesisId("joint"), std::move(constituents), mode, exchangeable, true};
}

bool has(const std::vector<Issue>& issues, const std::string& code) {
    for (const auto& i : issues)
        if (i.code == code) return true;
    return false;
}

} // namespace

TEST_CASE("HypothesisId rejects empty tokens") {
    CHECK_THROWS_AS(HypothesisId(""), ValidationError);
    CHECK(HypothesisId("green").str() == "green");
}

TEST_CASE("validate_family") {
    SUBCASE("duplicate constituent") {
        const auto r = validate_family(family({"g", "g"}, TestingMode::Disjunction));
        CHECK_FALSE(r.ok());
        CHECK(has(r.errors, "DuplicateConstituent"));
    }
    SUBCASE("empty family") {
        const auto r = validate_family(family({}, TestingMode::Conjunction));
        CHECK(has(r.errors, "EmptyFamily"));
    }
    SUBCASE("non-exchangeable disjunction is a warning") {
        const auto r = validate_family(family({"a", "b"}, TestingMode::Disjunction, false));
        CHECK(r.ok());
        REQUIRE(has(r.warnings, "NotExchangeable"));
        CHECK(r.warnings.front().message.find("theoretically exchangeable") != std::string::npos);
    }
    SUBCASE("non-exchangeable conjunction is fine") {
        const auto r = validate_family(family({"a", "b"}, TestingMode::Conjunction, false));
        CHECK(r.ok());
        CHECK(r.warnings.empty());
    }
    SUBCASE("individual mode cannot form a family") {
        CHECK_FALSE(validate_family(family({"a"}, TestingMode::Individual)).ok());
    }
    SUBCASE("idempotent and non-mutating") {
        const auto spec = family({"a", "a", "b"}, TestingMode::Disjunction, false);
        const auto copy = spec;
        const auto r1 = validate_family(spec);
        const auto r2 = validate_family(spec);
        CHECK(r1.errors.size() == r2.errors.size());
        CHECK(r1.warnings.size() == r2.warnings.size());
        CHECK(spec.constituents == copy.constituents);
    }
}

TEST_CASE("TestBattery invariants") {
    CHECK_THROWS_AS(TestBattery({}), ValidationError);
    CHECK_THROWS_AS(TestBattery({{HypothesisId("a"), 0.1}, {HypothesisId("a"), 0.2}}),
                    ValidationError);
    CHECK_THROWS_AS(TestBattery({{HypothesisId("a"), 1.5}}), ValidationError);
    CHECK_THROWS_AS(TestBattery({{HypothesisId("a"), -0.01}}), ValidationError);
    const TestBattery b({{HypothesisId("z"), 0.3}, {HypothesisId("a"), 0.0}, {HypothesisId("m"), 1.0}});
    CHECK(b.entries()[0].id.str() == "z");
    CHECK(b.p_values() == std::vector<double>{0.3, 0.0, 1.0});
}

TEST_CASE("AlphaConfig invariants") {
    CHECK_NOTHROW(AlphaConfig(0.05, Method::Sidak, TestingMode::Disjunction));
    CHECK_NOTHROW(AlphaConfig(0.05, Method::None, TestingMode::Conjunction));
    CHECK_NOTHROW(AlphaConfig(0.05, Method::None, TestingMode::Individual));
    CHECK_THROWS_AS(AlphaConfig(0.05, Method::None, TestingMode::Disjunction), ValidationError);
    CHECK_THROWS_AS(AlphaConfig(0.05, Method::Holm, TestingMode::Conjunction), ValidationError);
    CHECK_THROWS_AS(AlphaConfig(0.05, Method::Bonferroni, TestingMode::Individual), ValidationError);
    CHECK_THROWS_AS(AlphaConfig(0.0, Method::None, TestingMode::Individual), ValidationError);
    CHECK_THROWS_AS(AlphaConfig(1.0, Method::None, TestingMode::Individual), ValidationError);
}

TEST_CASE("enum parsing") {
    CHECK(parse_method("Sidak") == Method::Sidak);
    CHECK(parse_method("fdr") == Method::BenjaminiHochberg);
    CHECK_FALSE(parse_method("tukey"));
    CHECK(parse_testing_mode("CONJUNCTION") == TestingMode::Conjunction);
    CHECK_FALSE(parse_testing_mode("both"));
}

TEST_CASE("classify_testing_mode worked examples") {
    SUBCASE("twenty per-colour inferences, no joint claim") {
        const auto r = classify_testing_mode({true, false, false, true, true});
        CHECK(r.mode == TestingMode::Individual);
        CHECK_FALSE(r.adjust_alpha);
    }
    SUBCASE("two endpoints that must both succeed") {
        const auto r = classify_testing_mode({true, true, true, true, true});
        CHECK(r.mode == TestingMode::Conjunction);
        CHECK_FALSE(r.adjust_alpha);
    }
    SUBCASE("any of twenty colours suffices") {
        const auto r = classify_testing_mode({true, true, false, true, true});
        CHECK(r.mode == TestingMode::Disjunction);
        CHECK(r.adjust_alpha);
    }
    SUBCASE("no statistical claim") {
        const auto r = classify_testing_mode({false, true, false, true, true});
        CHECK_FALSE(r.mode.has_value());
        CHECK_FALSE(r.adjust_alpha);
    }
    SUBCASE("heap of hypotheses downgrades with a warning") {
        const auto r = classify_testing_mode({true, true, false, true, false});
        CHECK(r.mode == TestingMode::Individual);
        CHECK_FALSE(r.adjust_alpha);
        REQUIRE_FALSE(r.rationale.empty());
        CHECK(r.rationale.front().code == "HEAP_OF_HYPOTHESES");
        CHECK(r.rationale.front().warning);
    }
}

TEST_CASE("classify_testing_mode sweep") {
    for (unsigned bits = 0; bits < 32; ++bits) {
        const ClassificationInput in{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0,
                                     (bits & 8) != 0, (bits & 16) != 0};
        const auto r = classify_testing_mode(in);
        CAPTURE(bits);
        CHECK(r.adjust_alpha == (r.mode == TestingMode::Disjunction));
        CHECK(r.mode.has_value() == in.statistical_claim);
        CHECK_FALSE(r.rationale.empty());
        const auto again = classify_testing_mode(in);
        CHECK(again.mode == r.mode);
        CHECK(again.rationale.size() == r.rationale.size());
    }
}
