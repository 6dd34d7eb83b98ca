#pragma once

// Seeded Monte Carlo estimation of error rates for families of z tests.

#include "alphagate/hypothesis.hpp"
#include "alphagate/kernels.hpp"
#include "alphagate/normal.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace alphagate::sim {

inline constexpr std::uint64_t kDefaultReps = 100'000;
inline constexpr std::uint64_t kMaxReps = 100'000'000;

enum class DesignKind { Independent, Equicorrelated, SharedControl };

std::string_view to_string(DesignKind kind);

struct Design {
    DesignKind kind = DesignKind::Independent;
    double rho = 0.0; // Equicorrelated only, in [0, 1)
};

struct Scenario {
    std::vector<bool> null_pattern; // true = null hypothesis true
    std::vector<double> deltas;     // 0 wherever the null is true
    std::uint64_t n = 2;            // per-group sample size
    Design design;
    Sides sides = Sides::OneSided;
    double alpha_joint = 0.05;
    Method method = Method::Sidak; // disjunction procedure, FWER-controlling
    std::uint64_t reps = kDefaultReps;
    std::uint64_t seed = 0;

    std::size_t k() const noexcept { return null_pattern.size(); }

    /// k tests, all nulls true.
    static Scenario all_null(std::size_t k, double alpha, std::uint64_t reps, std::uint64_t seed);
};

/// Throws ValidationError("InvalidScenario").
void validate(const Scenario& scenario);

/// One replication's z statistics. Throws ValidationError.
std::vector<double> sample_statistics(const Scenario& scenario, std::uint64_t rep_seed);

struct Interval {
    double lower;
    double upper;
};

/// Wilson score interval. Throws DomainError when trials = 0, successes >
/// trials or level is outside (0, 1).
Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double level);

/// Integer tallies; summing them is order-independent, which is what makes
/// parallel runs bit-identical to serial ones.
struct Counts {
    std::uint64_t reps = 0;
    std::uint64_t fwer_events = 0;      // replications with V >= 1
    std::uint64_t false_positives = 0;  // sum of V
    std::uint64_t any_rejection = 0;    // R >= 1, unadjusted
    std::uint64_t disjunction_rejections = 0;
    std::uint64_t conjunction_rejections = 0;
    std::vector<std::uint64_t> per_test;          // rejections of test i
    std::vector<std::uint64_t> false_by_total;    // sum of V over reps with R = r

    void merge(const Counts& other);
};

struct Estimates {
    std::uint64_t reps = 0;
    double fwer_hat = 0.0;
    Interval fwer_ci{0.0, 0.0}; // Wilson 95%
    double mean_false_positives = 0.0;
    double fdr_hat = 0.0;
    std::vector<double> per_test_rejection;
    std::map<TestingMode, double> joint_reject_rate;
    std::uint64_t seed_echo = 0;
    std::chrono::duration<double> elapsed{0.0};
    kernels::Backend backend = kernels::Backend::Scalar;
    Counts counts;
};

struct SimOptions {
    unsigned threads = 0;                    // 0 = available parallelism
    std::optional<kernels::Backend> backend; // default: widest available
};

/// Per replication: draw statistics, convert to p values and run the
/// individual, disjunction (scenario.method) and conjunction rules on the
/// same battery. Individual testing is at alpha_joint, unadjusted.
///   fwer_hat   = P(V >= 1), V = false positives among true nulls
///   fdr_hat    = mean of V / max(R, 1)
///   joint_reject_rate[Individual] = P(R >= 1)
Estimates simulate(const Scenario& scenario, const SimOptions& options = {});

} // namespace alphagate::sim
