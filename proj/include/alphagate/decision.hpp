#pragma once

#include "alphagate/hypothesis.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace alphagate {

enum class Outcome { Reject, Retain };
enum class JointOutcome { Reject, Retain, NotApplicable };

std::string_view to_string(Outcome outcome);
std::string_view to_string(JointOutcome outcome);

struct HypothesisDecision {
    HypothesisId id;
    double p;
    double threshold;
    Outcome outcome;
};

struct Decision {
    std::vector<HypothesisDecision> per_hypothesis; // battery order
    JointOutcome joint = JointOutcome::NotApplicable;
    TestingMode mode = TestingMode::Individual;
    Method method = Method::None;
    std::vector<std::string> notes;

    /// Throws std::out_of_range for an unknown id.
    const HypothesisDecision& at(const HypothesisId& id) const;
    std::vector<HypothesisId> rejected() const;
};

// Advisory codes attached to Decision::notes.
inline constexpr std::string_view kNoteJointOnly = "JOINT_INFERENCE_ONLY";
inline constexpr std::string_view kNoteFdr = "FDR_CONTROL_NOT_FWER";

/// Each p is compared to alpha_individual regardless of battery size.
Decision decide_individual(const TestBattery& battery, double alpha_individual);

/// Rejects the joint intersection null when any constituent is rejected by
/// the FWER-controlling `method`. Throws ValidationError("InvalidMethod")
/// for None or BenjaminiHochberg.
Decision decide_disjunction(const TestBattery& battery, double alpha_joint, Method method);

/// Every constituent is compared to the unadjusted alpha_joint; the joint
/// union null is rejected only if all are.
Decision decide_conjunction(const TestBattery& battery, double alpha_joint);

/// Benjamini-Hochberg step-up at FDR level q. Screening only: tagged
/// Individual with no joint decision.
Decision apply_bh(const TestBattery& battery, double q);

/// Dispatches on config.mode() / config.method(). BH under a disjunction
/// config runs apply_bh.
Decision decide(const TestBattery& battery, const AlphaConfig& config);

} // namespace alphagate
