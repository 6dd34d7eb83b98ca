// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include "alphagate/cli.hpp"
#include "alphagate/decision.hpp"
#include "alphagate/error_math.hpp"
#include "alphagate/hypothesis.hpp"
#include "alphagate/io.hpp"
#include "alphagate/normal.hpp"
#include "alphagate/procedures.hpp"
#include "alphagate/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace alphagate;

namespace {

constexpr std::uint64_t kReps = 200'000;

// Collects failures for one criterion; the first few are kept as detail.
struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (notes.size() < 5) notes.push_back(what);
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }

// |v - printed| within half a unit of the last printed decimal.
bool matches_printed(double v, double printed, int decimals) {
    return std::fabs(v - printed) <= 0.5 * std::pow(10.0, -decimals) + 1e-12;
}

// Independent oracles in extended precision.
double fwer_oracle(double a, std::uint64_t k) {
    return static_cast<double>(1.0L - std::pow(1.0L - static_cast<long double>(a), static_cast<long double>(k)));
}
double sidak_oracle(double a, std::uint64_t k) {
    return static_cast<double>(1.0L - std::pow(1.0L - static_cast<long double>(a), 1.0L / static_cast<long double>(k)));
}

bool in_3sigma(double hat, double p, std::uint64_t n) {
    return std::fabs(hat - p) <= 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

sim::Estimates run_sim(const sim::Scenario& s) { return sim::simulate(s); }

std::string data(const std::string& name) { return std::string(ALPHAGATE_TEST_DATA) + "/" + name; }

Check closed_forms() {
    Check c;
    struct Row {
        const char* name;
        double value, oracle, stated; // stated = value quoted to six decimals
        double printed;
        int decimals;
    };
    const double bonf = bonferroni_adjust(0.05, 167355);
    const Row rows[] = {
        {"fwer(.05,2)", fwer_independent(0.05, 2), fwer_oracle(0.05, 2), 0.0975, 0.098, 3},
        {"fwer(.05,20)", fwer_independent(0.05, 20), fwer_oracle(0.05, 20), 0.641514, 0.64, 2},
        {"fwer(.05,100)", fwer_independent(0.05, 100), fwer_oracle(0.05, 100), 0.994079, 0.9941, 4},
        {"per_family(.05,20)", per_family_rate(0.05, 20), 20 * 0.05, 1.0, 1.00, 2},
        {"sidak(.05,2)", sidak_adjust(0.05, 2), sidak_oracle(0.05, 2), 0.025321, 0.025, 3},
        {"conj_type2(.20,2)", conjunction_type2(0.20, 2), 1.0 - 0.8 * 0.8, 0.36, 0.36, 2},
        {"conj_power(.80,2)", conjunction_power(0.80, 2), 0.8 * 0.8, 0.64, 0.64, 2},
        {"dice fwer(1/20,20)", fwer_independent(1.0 / 20, 20), fwer_oracle(1.0 / 20, 20), 0.641514, 0.64, 2},
    };
    for (const auto& r : rows) {
        c.expect(rel(r.value, r.oracle) <= 1e-12, fmt("%g vs oracle %g", r.value, r.oracle) + " " + r.name);
        c.expect(std::fabs(r.value - r.stated) <= 5e-7, fmt("%.9g vs %.9g", r.value, r.stated) + " " + r.name);
        c.expect(matches_printed(r.value, r.printed, r.decimals), std::string(r.name) + " printed");
    }
    // .05/167,355: exact value 2.987660960e-7. The six-digit figure 2.98767e-7
    // is one unit high in the last digit, so allow one unit rather than half.
    c.expect(rel(bonf, 0.05 / 167355.0L) <= 1e-12, "bonferroni vs oracle");
    c.expect(std::fabs(bonf - 2.98767e-7) <= 1e-12, fmt("bonferroni %.9g", bonf));
    // dice: also at four digits
    c.expect(matches_printed(fwer_independent(1.0 / 20, 20), 0.6415, 4), "dice .6415");
    return c;
}

Check round_trips() {
    Check c;
    double worst = 0.0;
    for (double a : {0.001, 0.01, 0.05, 0.1}) {
        for (std::uint64_t k = 1; k <= 10'000; ++k) {
            const double s = sidak_adjust(a, k);
            const double back = fwer_independent(s, k);
            worst = std::max(worst, std::fabs(back - a));
            c.expect(std::fabs(back - a) <= 1e-12, fmt("a=%g k=%g back=%.17g", a, double(k), back));
            const double b = bonferroni_adjust(a, k);
            c.expect(k == 1 ? b == s : b < s, fmt("bonferroni vs sidak a=%g k=%g", a, double(k)));
        }
    }
    c.notes.insert(c.notes.begin(), fmt("max |fwer(sidak)-a| = %.3g", worst));
    return c;
}

Check mc_vs_formula() {
    Check c;
    const std::pair<double, std::size_t> cases[] = {{0.05, 2}, {0.05, 20}, {0.01, 100}};
    std::uint64_t seed = 101;
    for (const auto& [a, k] : cases) {
        const auto est = run_sim(sim::Scenario::all_null(k, a, kReps, seed++));
        const double f = fwer_oracle(a, k);
        c.notes.push_back(fmt("a=%g k=%g fwer_hat=%.5f", a, double(k), est.fwer_hat));
        c.expect(in_3sigma(est.fwer_hat, f, kReps), fmt("outside 3 sigma: %.5f vs %.5f", est.fwer_hat, f));
        if (k == 20) c.expect(est.fwer_hat >= 0.6375 && est.fwer_hat <= 0.6455, "k=20 window");
    }
    return c;
}

TestBattery random_battery(std::mt19937_64& gen, std::size_t m, const std::string& prefix) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<BatteryEntry> entries;
    for (std::size_t i = 0; i < m; ++i) {
        const double v = u(gen);
        entries.push_back({HypothesisId(prefix + std::to_string(i)), v * v * 0.2});
    }
    return TestBattery(std::move(entries));
}

Check per_test_invariance() {
    Check c;
    const auto est = run_sim(sim::Scenario::all_null(100, 0.05, kReps, 202));
    double lo = 1, hi = 0;
    for (double r : est.per_test_rejection) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        c.expect(std::fabs(r - 0.05) <= 0.002, fmt("per-test rate %.5f", r));
    }
    c.notes.insert(c.notes.begin(), fmt("per-test range [%.5f, %.5f]", lo, hi));

    std::mt19937_64 gen(404);
    int changed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto base = random_battery(gen, 1 + gen() % 30, "h");
        auto entries = base.entries();
        const auto extra = random_battery(gen, 1 + gen() % 30, "x");
        entries.insert(entries.end(), extra.entries().begin(), extra.entries().end());
        const auto before = decide_individual(base, 0.05);
        const auto after = decide_individual(TestBattery(entries), 0.05);
        for (std::size_t i = 0; i < base.size(); ++i)
            changed += before.per_hypothesis[i].outcome != after.per_hypothesis[i].outcome;
    }
    c.expect(changed == 0, fmt("%g decisions changed after appending", changed));
    return c;
}

Check adjustment_efficacy() {
    Check c;
    auto s = sim::Scenario::all_null(20, 0.05, kReps, 303);
    s.method = Method::Sidak;
    const auto est = run_sim(s);
    const double adjusted = est.joint_reject_rate.at(TestingMode::Disjunction);
    // unadjusted disjunction: reject the joint null when any p <= .05
    const double unadjusted = est.joint_reject_rate.at(TestingMode::Individual);
    c.notes.push_back(fmt("sidak %.5f, unadjusted %.5f", adjusted, unadjusted));
    c.expect(std::fabs(adjusted - 0.05) <= 0.003, "sidak outside .05 +/- .003");
    c.expect(in_3sigma(unadjusted, 0.6415, kReps), "unadjusted not ~.6415");
    return c;
}

Check conjunction() {
    Check c;
    const std::uint64_t n = 50;
    const double delta = (normal_quantile(0.95) + normal_quantile(0.80)) / std::sqrt(n / 2.0);
    c.expect(std::fabs(power_one_sided_z(0.05, delta, n) - 0.80) <= 1e-12, "power calibration");

    for (double d : {delta, 3.0}) {
        sim::Scenario s = sim::Scenario::all_null(2, 0.05, kReps, 404);
        s.n = n;
        s.null_pattern = {true, false};
        s.deltas = {0.0, d};
        const auto est = run_sim(s);
        const double conj = est.joint_reject_rate.at(TestingMode::Conjunction);
        c.notes.push_back(fmt("one true null, delta=%.4f: %.5f", d, conj));
        c.expect(conj <= 0.053, "one-null conjunction above .053");
    }

    sim::Scenario s = sim::Scenario::all_null(2, 0.05, kReps, 405);
    s.n = n;
    s.null_pattern = {false, false};
    s.deltas = {delta, delta};
    const auto est = run_sim(s);
    const double conj = est.joint_reject_rate.at(TestingMode::Conjunction);
    c.notes.push_back(fmt("power .80 each: conjunction %.5f", conj));
    c.expect(std::fabs(conj - 0.64) <= 0.01, "calibrated conjunction outside .64 +/- .01");
    return c;
}

Check dependence() {
    Check c;
    auto base = sim::Scenario::all_null(20, 0.05, kReps, 505);
    const auto ind = run_sim(base);
    const auto ind99 = sim::wilson_ci(ind.counts.fwer_events, ind.reps, 0.99);
    c.notes.push_back(fmt("independent %.5f [%.5f, %.5f]", ind.fwer_hat, ind99.lower, ind99.upper));

    auto eq = base;
    eq.design = {sim::DesignKind::Equicorrelated, 0.5};
    auto sc = base;
    sc.design = {sim::DesignKind::SharedControl, 0.0};
    for (const auto& [name, s] : {std::pair<const char*, sim::Scenario>{"equicorrelated", eq}, {"shared_control", sc}}) {
        const auto est = run_sim(s);
        const auto ci = sim::wilson_ci(est.counts.fwer_events, est.reps, 0.99);
        c.notes.push_back(std::string(name) + fmt(" %.5f [%.5f, %.5f]", est.fwer_hat, ci.lower, ci.upper));
        c.expect(est.fwer_hat < ind.fwer_hat, std::string(name) + " not below independent");
        c.expect(ci.upper < ind99.lower, std::string(name) + " interval overlaps");
    }
    return c;
}

Check fdr_identity() {
    Check c;
    for (auto [k, a] : {std::pair<std::size_t, double>{2, 0.05}, {20, 0.05}, {100, 0.01}}) {
        const auto est = run_sim(sim::Scenario::all_null(k, a, 50'000, 606 + k));
        c.expect(est.fdr_hat == est.fwer_hat, fmt("all-null k=%g fdr %.17g fwer %.17g", double(k), est.fdr_hat, est.fwer_hat));
    }
    for (auto kind : {sim::DesignKind::Equicorrelated, sim::DesignKind::SharedControl}) {
        auto s = sim::Scenario::all_null(20, 0.05, 50'000, 607);
        s.design = {kind, kind == sim::DesignKind::Equicorrelated ? 0.5 : 0.0};
        const auto est = run_sim(s);
        c.expect(est.fdr_hat == est.fwer_hat, "all-null dependent design: fdr != fwer");
    }
    auto s = sim::Scenario::all_null(20, 0.05, kReps, 608);
    for (std::size_t i = 10; i < 20; ++i) {
        s.null_pattern[i] = false;
        s.deltas[i] = 0.5;
    }
    const auto est = run_sim(s);
    c.notes.push_back(fmt("10 of 20 false: fdr %.5f <= fwer %.5f", est.fdr_hat, est.fwer_hat));
    c.expect(est.fdr_hat <= est.fwer_hat, "fdr above fwer");
    return c;
}

Check dominance() {
    Check c;
    std::mt19937_64 gen(909);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    procedures::Workspace ws;
    auto set = [&](const std::vector<double>& p, Method m, double a) {
        procedures::run(p, m, a, ws);
        return ws.reject;
    };
    auto contains = [](const std::vector<std::uint8_t>& big, const std::vector<std::uint8_t>& small) {
        for (std::size_t i = 0; i < big.size(); ++i)
            if (small[i] && !big[i]) return false;
        return true;
    };
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> p(1 + gen() % 40);
        for (auto& x : p) {
            const double v = u(gen);
            x = trial % 2 ? v * v * v * 0.1 : v;
        }
        const double a = trial % 3 ? 0.05 : 0.01;
        const auto bonf = set(p, Method::Bonferroni, a);
        const auto holm = set(p, Method::Holm, a);
        const auto hoch = set(p, Method::Hochberg, a);
        const auto bh = set(p, Method::BenjaminiHochberg, a);
        violations += !contains(holm, bonf) + !contains(hoch, holm) + !contains(bh, hoch);
    }
    c.notes.push_back(fmt("%g violations", violations));
    c.expect(violations == 0, "dominance violated");
    return c;
}

Check determinism() {
    Check c;
    auto run = [&](const std::string& threads) {
        std::ostringstream out, err;
        const int code = cli::run_command({"simulate", "--scenario", data("jellybeans.json"), "--reps", "50000",
                                           "--seed", "2024", "--threads", threads},
                                          out, err);
        c.expect(code == 0, "simulate exit " + std::to_string(code) + ": " + err.str());
        return out.str();
    };
    const auto first = run("1");
    c.expect(!first.empty(), "empty output");
    c.expect(run("1") == first, "second run differs");
    c.expect(run("4") == first, "4 threads differ");
    const unsigned max = std::max(1u, std::thread::hardware_concurrency());
    c.expect(run(std::to_string(max)) == first, "max threads differ");
    c.notes.push_back("threads 1, 4, " + std::to_string(max));
    return c;
}

Check classifier() {
    Check c;
    struct Worked {
        const char* file;
        TestingMode mode;
        bool adjust;
    };
    for (const auto& w : {Worked{"per_colour.json", TestingMode::Individual, false},
                          Worked{"two_endpoints.json", TestingMode::Conjunction, false},
                          Worked{"jellybeans.json", TestingMode::Disjunction, true}}) {
        const auto file = io::read_scenario_file(data(w.file));
        c.expect(file.classification.has_value(), std::string(w.file) + " has no classification");
        if (!file.classification) continue;
        const auto r = classify_testing_mode(*file.classification);
        c.expect(r.mode == w.mode && r.adjust_alpha == w.adjust, std::string(w.file) + " misclassified");
    }
    int adjust_outside_disjunction = 0, disjunctions = 0;
    for (unsigned bits = 0; bits < 32; ++bits) {
        const ClassificationInput in{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0,
                                     (bits & 16) != 0};
        const auto r = classify_testing_mode(in);
        adjust_outside_disjunction += r.adjust_alpha && r.mode != TestingMode::Disjunction;
        disjunctions += r.mode == TestingMode::Disjunction;
        c.expect(!(r.mode == TestingMode::Disjunction) || r.adjust_alpha, "disjunction without adjustment");
    }
    c.expect(adjust_outside_disjunction == 0, "adjust outside disjunction");
    c.notes.push_back(fmt("32 inputs, %g disjunctions", disjunctions));
    return c;
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Check()>> criteria[] = {
        {"closed-form reproduction", closed_forms},
        {"analytic round-trips", round_trips},
        {"monte carlo vs formula", mc_vs_formula},
        {"per-test invariance", per_test_invariance},
        {"adjustment efficacy", adjustment_efficacy},
        {"conjunction validity and power", conjunction},
        {"dependence attenuation", dependence},
        {"fdr/fwer identity", fdr_identity},
        {"procedure dominance", dominance},
        {"determinism", determinism},
        {"classifier conformance", classifier},
    };
    int failed = 0, i = 0;
    for (const auto& [name, fn] : criteria) {
        ++i;
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes.push_back(std::string("exception: ") + e.what());
        }
        std::string detail;
        for (const auto& n : c.notes) detail += (detail.empty() ? "" : "; ") + n;
        std::printf("%s %2d %s%s%s\n", c.ok ? "PASS" : "FAIL", i, name, detail.empty() ? "" : " -- ", detail.c_str());
        failed += !c.ok;
    }
    std::printf("%d/%d criteria passed\n", i - failed, i);
    return failed == 0 ? 0 : 1;
}
