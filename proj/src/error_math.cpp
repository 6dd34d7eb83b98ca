#include "alphagate/error_math.hpp"

#include "alphagate/errors.hpp"
#include "alphagate/normal.hpp"

#include <cmath>
#include <string>

namespace alphagate {

namespace {

void check_unit_open(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0, 1)");
    }
}

void check_k(std::uint64_t k) {
    if (k == 0) throw DomainError("k must be at least 1");
    if (k > kMaxFamilySize) throw DomainError("k must not exceed 10^7");
}

// 1 - (1 - x)^k through log1p/expm1 so tiny x keeps full precision.
double complement_power(double x, std::uint64_t k) {
    if (k == 1) return x;
    return -std::expm1(static_cast<double>(k) * std::log1p(-x));
}

} // namespace

double fwer_independent(double alpha, std::uint64_t k) {
    check_unit_open(alpha, "alpha");
    check_k(k);
    return complement_power(alpha, k);
}

double per_family_rate(double alpha, std::uint64_t k) {
    check_unit_open(alpha, "alpha");
    check_k(k);
    return static_cast<double>(k) * alpha;
}

double sidak_adjust(double alpha_joint, std::uint64_t k) {
    check_unit_open(alpha_joint, "alpha_joint");
    check_k(k);
    if (k == 1) return alpha_joint;
    return -std::expm1(std::log1p(-alpha_joint) / static_cast<double>(k));
}

double bonferroni_adjust(double alpha_joint, std::uint64_t k) {
    check_unit_open(alpha_joint, "alpha_joint");
    check_k(k);
    return alpha_joint / static_cast<double>(k);
}

double conjunction_type2(double beta_constituent, std::uint64_t k) {
    check_unit_open(beta_constituent, "beta_constituent");
    check_k(k);
    return complement_power(beta_constituent, k);
}

double conjunction_power(double power_constituent, std::uint64_t k) {
    check_unit_open(power_constituent, "power_constituent");
    check_k(k);
    return std::pow(power_constituent, static_cast<double>(k));
}

double power_one_sided_z(double alpha, double delta, std::uint64_t n) {
    check_unit_open(alpha, "alpha");
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw DomainError("delta must be finite and non-negative");
    }
    if (n < 2) throw DomainError("n must be at least 2");
    // z_{1-alpha} = -z_alpha keeps precision for small alpha.
    const double critical = -normal_quantile(alpha);
    return normal_cdf(delta * std::sqrt(static_cast<double>(n) / 2.0) - critical);
}

double weighted_error_cost(const CostModel& cost, double alpha) {
    const double beta = 1.0 - power_one_sided_z(alpha, cost.delta, cost.n);
    return cost.omega * alpha + (1.0 - cost.omega) * beta;
}

OptimalAlpha optimal_alpha(const CostModel& cost) {
    if (!(cost.omega >= 0.0 && cost.omega <= 1.0)) throw DomainError("omega must lie in [0, 1]");
    if (!(cost.delta >= 0.0) || !std::isfinite(cost.delta)) {
        throw DomainError("delta must be finite and non-negative");
    }
    if (cost.n < 2) throw DomainError("n must be at least 2");
    const auto [lo_bound, hi_bound] = cost.alpha_bounds;
    if (!(lo_bound > 0.0 && hi_bound < 1.0 && lo_bound <= hi_bound)) {
        throw DomainError("alpha_bounds must be an interval inside (0, 1)");
    }

    const auto f = [&](double a) { return weighted_error_cost(cost, a); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo_bound;
    double b = hi_bound;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-9) {
        // <= keeps the left bracket on ties
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }

    OptimalAlpha best{lo_bound, f(lo_bound)};
    const double mid = 0.5 * (a + b);
    for (double candidate : {mid, hi_bound}) {
        const double value = f(candidate);
        if (value < best.objective_value) best = {candidate, value};
    }
    return best;
}

ErrorRateReport table1_report(std::uint64_t t, std::uint64_t h, double alpha) {
    if (t == 0 || h == 0) throw DomainError("t and h must be at least 1");
    if (t % h != 0) throw DomainError("h must divide t");
    const std::uint64_t k = t / h;
    return {t, h, k, alpha, per_family_rate(alpha, k), fwer_independent(alpha, k)};
}

} // namespace alphagate
