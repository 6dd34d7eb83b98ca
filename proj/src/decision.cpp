#include "alphagate/decision.hpp"

#include "alphagate/errors.hpp"
#include "alphagate/procedures.hpp"

#include <algorithm>
#include <stdexcept>

namespace alphagate {

std::string_view to_string(Outcome outcome) {
    return outcome == Outcome::Reject ? "Reject" : "Retain";
}

std::string_view to_string(JointOutcome outcome) {
    switch (outcome) {
    case JointOutcome::Reject: return "Reject";
    case JointOutcome::Retain: return "Retain";
    case JointOutcome::NotApplicable: return "NotApplicable";
    }
    return "?";
}

const HypothesisDecision& Decision::at(const HypothesisId& id) const {
    const auto it = std::find_if(per_hypothesis.begin(), per_hypothesis.end(),
                                 [&](const HypothesisDecision& d) { return d.id == id; });
    if (it == per_hypothesis.end()) throw std::out_of_range("unknown hypothesis '" + id.str() + "'");
    return *it;
}

std::vector<HypothesisId> Decision::rejected() const {
    std::vector<HypothesisId> out;
    for (const auto& d : per_hypothesis) {
        if (d.outcome == Outcome::Reject) out.push_back(d.id);
    }
    return out;
}

namespace {

void check_level(double alpha, const char* name) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1)");
    }
}

Decision run_procedure(const TestBattery& battery, Method method, double alpha,
                       TestingMode mode, std::size_t& rejected) {
    procedures::Workspace ws;
    rejected = procedures::run(battery.p_values(), method, alpha, ws);
    Decision d;
    d.mode = mode;
    d.method = method;
    d.per_hypothesis.reserve(battery.size());
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const auto& e = battery.entries()[i];
        d.per_hypothesis.push_back({e.id, e.p, ws.thresholds[i],
                                    ws.reject[i] ? Outcome::Reject : Outcome::Retain});
    }
    return d;
}

} // namespace

Decision decide_individual(const TestBattery& battery, double alpha_individual) {
    check_level(alpha_individual, "alpha_individual");
    std::size_t rejected = 0;
    return run_procedure(battery, Method::None, alpha_individual, TestingMode::Individual,
                         rejected);
}

Decision decide_disjunction(const TestBattery& battery, double alpha_joint, Method method) {
    check_level(alpha_joint, "alpha_joint");
    if (!controls_fwer(method)) {
        throw ValidationError("InvalidMethod",
                              "disjunction testing needs a familywise procedure (bonferroni, "
                              "sidak, holm, hochberg), got '" +
                                  std::string(to_string(method)) + "'");
    }
    std::size_t rejected = 0;
    auto d = run_procedure(battery, method, alpha_joint, TestingMode::Disjunction, rejected);
    d.joint = rejected > 0 ? JointOutcome::Reject : JointOutcome::Retain;
    if (rejected > 0) d.notes.emplace_back(kNoteJointOnly);
    return d;
}

Decision decide_conjunction(const TestBattery& battery, double alpha_joint) {
    check_level(alpha_joint, "alpha_joint");
    std::size_t rejected = 0;
    auto d = run_procedure(battery, Method::None, alpha_joint, TestingMode::Conjunction, rejected);
    d.joint = rejected == battery.size() ? JointOutcome::Reject : JointOutcome::Retain;
    return d;
}

Decision apply_bh(const TestBattery& battery, double q) {
    check_level(q, "q");
    std::size_t rejected = 0;
    auto d = run_procedure(battery, Method::BenjaminiHochberg, q, TestingMode::Individual,
                           rejected);
    d.notes.emplace_back(kNoteFdr);
    return d;
}

Decision decide(const TestBattery& battery, const AlphaConfig& config) {
    switch (config.mode()) {
    case TestingMode::Individual: return decide_individual(battery, config.alpha_joint());
    case TestingMode::Conjunction: return decide_conjunction(battery, config.alpha_joint());
    case TestingMode::Disjunction:
        if (config.method() == Method::BenjaminiHochberg) {
            return apply_bh(battery, config.alpha_joint());
        }
        return decide_disjunction(battery, config.alpha_joint(), config.method());
    }
    throw std::logic_error("unreachable testing mode");
}

} // namespace alphagate
