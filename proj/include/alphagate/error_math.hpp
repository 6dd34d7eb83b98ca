#pragma once

// Closed-form error rates, alpha adjustments and power arithmetic for
// families of k tests.

#include <cstdint>
#include <string>

namespace alphagate {

/// Largest family size accepted by the closed-form routines.
inline constexpr std::uint64_t kMaxFamilySize = 10'000'000;

/// Probability of at least one Type I error among k independent tests at
/// per-test alpha: 1 - (1 - alpha)^k. Throws DomainError.
double fwer_independent(double alpha, std::uint64_t k);

/// Expected number of false positives, k * alpha. Not a probability; may
/// exceed 1.
double per_family_rate(double alpha, std::uint64_t k);

/// Per-test alpha that holds the familywise rate at alpha_joint under
/// independence: 1 - (1 - alpha_joint)^(1/k).
double sidak_adjust(double alpha_joint, std::uint64_t k);

/// alpha_joint / k.
double bonferroni_adjust(double alpha_joint, std::uint64_t k);

/// Joint Type II rate of a conjunction of k tests, 1 - (1 - beta)^k.
double conjunction_type2(double beta_constituent, std::uint64_t k);

/// Probability that all k independent tests reject: power^k.
double conjunction_power(double power_constituent, std::uint64_t k);

/// Power of a one-sided two-sample z test with per-group size n at
/// standardized effect delta: Phi(delta * sqrt(n/2) - z_{1-alpha}).
double power_one_sided_z(double alpha, double delta, std::uint64_t n);

struct AlphaBounds {
    double lower;
    double upper;
};

struct CostModel {
    double omega;         // relative cost weight of a Type I error, in [0, 1]
    double delta;         // standardized critical effect size
    std::uint64_t n;      // per-group sample size, >= 2
    AlphaBounds alpha_bounds;
};

struct OptimalAlpha {
    double alpha_star;
    double objective_value;
};

/// omega * alpha + (1 - omega) * beta(alpha) for the one-sided z test.
double weighted_error_cost(const CostModel& cost, double alpha);

/// Minimizes weighted_error_cost over alpha_bounds by golden-section search
/// (interval <= 1e-9); ties go to the smaller alpha. Throws DomainError.
OptimalAlpha optimal_alpha(const CostModel& cost);

struct ErrorRateReport {
    std::uint64_t t;  // significance tests
    std::uint64_t h;  // primary hypotheses
    std::uint64_t k;  // tests per primary hypothesis, t / h
    double alpha_per_test;
    double per_family_rate;
    double fwer;
};

/// Error rates for t tests spread over h primary hypotheses. Throws
/// DomainError unless h divides t.
ErrorRateReport table1_report(std::uint64_t t, std::uint64_t h, double alpha);

} // namespace alphagate
