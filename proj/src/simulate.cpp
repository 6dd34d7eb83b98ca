#include "alphagate/simulate.hpp"

#include "alphagate/errors.hpp"
#include "alphagate/procedures.hpp"
#include "alphagate/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace alphagate::sim {

double Xoshiro256::next_normal() noexcept { return normal_quantile(next_open_unit()); }

std::string_view to_string(DesignKind kind) {
    switch (kind) {
    case DesignKind::Independent: return "independent";
    case DesignKind::Equicorrelated: return "equicorrelated";
    case DesignKind::SharedControl: return "shared_control";
    }
    return "?";
}

Scenario Scenario::all_null(std::size_t k, double alpha, std::uint64_t reps, std::uint64_t seed) {
    Scenario s;
    s.null_pattern.assign(k, true);
    s.deltas.assign(k, 0.0);
    s.n = 50;
    s.alpha_joint = alpha;
    s.reps = reps;
    s.seed = seed;
    return s;
}

void validate(const Scenario& s) {
    const auto fail = [](const std::string& msg) { throw ValidationError("InvalidScenario", msg); };
    if (s.k() == 0) fail("k must be at least 1");
    if (s.deltas.size() != s.k()) {
        fail("deltas has " + std::to_string(s.deltas.size()) + " entries, expected k = " +
             std::to_string(s.k()));
    }
    for (std::size_t i = 0; i < s.k(); ++i) {
        if (!std::isfinite(s.deltas[i])) fail("deltas[" + std::to_string(i) + "] is not finite");
        if (s.null_pattern[i] && s.deltas[i] != 0.0) {
            fail("deltas[" + std::to_string(i) + "] must be 0 where the null is true");
        }
    }
    if (s.n < 2) fail("n must be at least 2");
    if (s.design.kind == DesignKind::Equicorrelated && !(s.design.rho >= 0.0 && s.design.rho < 1.0)) {
        fail("rho must lie in [0, 1)");
    }
    if (!(s.alpha_joint > 0.0 && s.alpha_joint < 1.0)) fail("alpha_joint must lie in (0, 1)");
    if (!controls_fwer(s.method)) {
        fail("method must be a familywise procedure (bonferroni, sidak, holm, hochberg)");
    }
    if (s.reps < 1 || s.reps > kMaxReps) fail("reps must lie in [1, 10^8]");
}

namespace {

// Per-thread buffers plus the scenario constants every replication needs.
class Replicator {
public:
    Replicator(const Scenario& s, const kernels::Kernels& kern)
        : s_(s), kern_(kern), k_(s.k()), noise_(k_), z_(k_), p_(k_), null_mask_(k_),
          shift_(k_), mean_(s.deltas) {
        const double root_half_n = std::sqrt(static_cast<double>(s.n) / 2.0);
        for (std::size_t i = 0; i < k_; ++i) {
            null_mask_[i] = s.null_pattern[i] ? 1 : 0;
            shift_[i] = s.deltas[i] * root_half_n;
        }
        inv_root_n_ = 1.0 / std::sqrt(static_cast<double>(s.n));
        inv_se_ = root_half_n;
        if (s.design.kind == DesignKind::Equicorrelated) {
            common_scale_ = std::sqrt(s.design.rho);
            own_scale_ = std::sqrt(1.0 - s.design.rho);
        }
    }

    std::span<const double> draw(std::uint64_t rep_seed) {
        Xoshiro256 rng(rep_seed);
        switch (s_.design.kind) {
        case DesignKind::Independent:
            fill_noise(rng);
            kern_.shift_mix(shift_, 0.0, 1.0, noise_, z_);
            break;
        case DesignKind::Equicorrelated: {
            const double common = common_scale_ * rng.next_normal();
            fill_noise(rng);
            kern_.shift_mix(shift_, common, own_scale_, noise_, z_);
            break;
        }
        case DesignKind::SharedControl: {
            // Group means have variance 1/n; the statistic is the difference
            // to the control mean over its standard error sqrt(2/n).
            const double control = inv_root_n_ * rng.next_normal();
            fill_noise(rng);
            kern_.contrast(mean_, inv_root_n_, noise_, control, inv_se_, z_);
            break;
        }
        }
        return z_;
    }

    void replicate(std::uint64_t rep, Counts& c) {
        draw(derive_rep_seed(s_.seed, rep));
        for (std::size_t i = 0; i < k_; ++i) p_[i] = p_from_z(z_[i], s_.sides);

        const std::size_t total = procedures::single_step(p_, s_.alpha_joint, unadjusted_, kern_);
        const std::size_t false_pos = kern_.count_both(unadjusted_.reject, null_mask_);
        for (std::size_t i = 0; i < k_; ++i) c.per_test[i] += unadjusted_.reject[i];
        c.false_positives += false_pos;
        c.false_by_total[total] += false_pos;
        c.fwer_events += false_pos > 0;
        c.any_rejection += total > 0;
        c.conjunction_rejections += total == k_;

        const std::size_t disj = procedures::run(p_, s_.method, s_.alpha_joint, adjusted_, kern_);
        c.disjunction_rejections += disj > 0;
        ++c.reps;
    }

private:
    void fill_noise(Xoshiro256& rng) {
        for (auto& g : noise_) g = rng.next_normal();
    }

    const Scenario& s_;
    const kernels::Kernels& kern_;
    std::size_t k_;
    std::vector<double> noise_, z_, p_;
    std::vector<std::uint8_t> null_mask_;
    std::vector<double> shift_, mean_;
    double inv_root_n_ = 0.0, inv_se_ = 0.0, common_scale_ = 0.0, own_scale_ = 1.0;
    procedures::Workspace unadjusted_, adjusted_;
};

Counts empty_counts(std::size_t k) {
    Counts c;
    c.per_test.assign(k, 0);
    c.false_by_total.assign(k + 1, 0);
    return c;
}

} // namespace

void Counts::merge(const Counts& o) {
    reps += o.reps;
    fwer_events += o.fwer_events;
    false_positives += o.false_positives;
    any_rejection += o.any_rejection;
    disjunction_rejections += o.disjunction_rejections;
    conjunction_rejections += o.conjunction_rejections;
    for (std::size_t i = 0; i < per_test.size(); ++i) per_test[i] += o.per_test[i];
    for (std::size_t i = 0; i < false_by_total.size(); ++i) false_by_total[i] += o.false_by_total[i];
}

std::vector<double> sample_statistics(const Scenario& scenario, std::uint64_t rep_seed) {
    validate(scenario);
    Replicator r(scenario, kernels::best_kernels());
    const auto z = r.draw(rep_seed);
    return {z.begin(), z.end()};
}

Interval wilson_ci(std::uint64_t successes, std::uint64_t trials, double level) {
    if (trials == 0) throw DomainError("trials must be at least 1");
    if (successes > trials) throw DomainError("successes must not exceed trials");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.lower = 0.0;
    if (successes == trials) ci.upper = 1.0;
    return ci;
}

Estimates simulate(const Scenario& scenario, const SimOptions& options) {
    validate(scenario);
    const auto start = std::chrono::steady_clock::now();
    const auto& kern = options.backend ? kernels::kernels_for(*options.backend)
                                       : kernels::best_kernels();
    const std::size_t k = scenario.k();

    unsigned threads = options.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, scenario.reps));

    std::vector<Counts> partial(threads, empty_counts(k));
    const auto work = [&](unsigned t) {
        const std::uint64_t begin = scenario.reps * t / threads;
        const std::uint64_t end = scenario.reps * (t + 1) / threads;
        Replicator r(scenario, kern);
        for (std::uint64_t rep = begin; rep < end; ++rep) r.replicate(rep, partial[t]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    Counts total = empty_counts(k);
    for (const auto& c : partial) total.merge(c);

    Estimates est;
    const double reps = static_cast<double>(total.reps);
    est.reps = total.reps;
    est.fwer_hat = static_cast<double>(total.fwer_events) / reps;
    est.fwer_ci = wilson_ci(total.fwer_events, total.reps, 0.95);
    est.mean_false_positives = static_cast<double>(total.false_positives) / reps;
    double fdp_sum = 0.0;
    for (std::size_t r = 1; r <= k; ++r) {
        fdp_sum += static_cast<double>(total.false_by_total[r]) / static_cast<double>(r);
    }
    est.fdr_hat = fdp_sum / reps;
    est.per_test_rejection.reserve(k);
    for (auto count : total.per_test) est.per_test_rejection.push_back(static_cast<double>(count) / reps);
    est.joint_reject_rate[TestingMode::Individual] = static_cast<double>(total.any_rejection) / reps;
    est.joint_reject_rate[TestingMode::Disjunction] =
        static_cast<double>(total.disjunction_rejections) / reps;
    est.joint_reject_rate[TestingMode::Conjunction] =
        static_cast<double>(total.conjunction_rejections) / reps;
    est.seed_echo = scenario.seed;
    est.backend = kern.backend;
    est.counts = std::move(total);
    est.elapsed = std::chrono::steady_clock::now() - start;
    return est;
}

} // namespace alphagate::sim
