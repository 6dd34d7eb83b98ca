#include "alphagate/cli.hpp"

#include "alphagate/decision.hpp"
#include "alphagate/error_math.hpp"
#include "alphagate/errors.hpp"
#include "alphagate/io.hpp"
#include "alphagate/report.hpp"
#include "alphagate/simulate.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace alphagate::cli {

namespace {

using report::Cell;
using report::Table;

struct Globals {
    std::string format = "tsv";
    std::string out_path;
    int precision = 6;
};

struct Args {
    double alpha = 0.0;
    std::uint64_t k = 1;
    std::uint64_t t = 1;
    std::uint64_t h = 1;
    std::uint64_t n = 2;
    double delta = 0.0;
    double omega = 0.5;
    double lower = 1e-6;
    double upper = 0.2;
    std::string method;
    std::string mode;
    std::string joint_id = "joint";
    bool independent = false;
    bool conjunction = false;
    std::string battery;
    std::string input;
    std::string scenario;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string kernels = "auto";
};

Cell num(double v) { return v; }
Cell count(std::uint64_t v) { return v; }
Cell str(std::string_view v) { return std::string(v); }

Table rates(const Args& a) {
    Table t{{"alpha", "k", "fwer", "per_family_rate"}, {}};
    t.add({num(a.alpha), count(a.k), num(fwer_independent(a.alpha, a.k)),
           num(per_family_rate(a.alpha, a.k))});
    return t;
}

Table adjust(const Args& a) {
    const auto method = parse_method(a.method);
    double per_test = 0.0;
    if (method == Method::Bonferroni) {
        per_test = bonferroni_adjust(a.alpha, a.k);
    } else if (method == Method::Sidak) {
        per_test = sidak_adjust(a.alpha, a.k);
    } else {
        throw ValidationError("InvalidMethod",
                              "--method: only bonferroni and sidak have a single per-test alpha; "
                              "step procedures are applied by 'decide'");
    }
    Table t{{"method", "alpha_joint", "k", "alpha_per_test"}, {}};
    t.add({str(to_string(*method)), num(a.alpha), count(a.k), num(per_test)});
    return t;
}

Table table1(const Args& a) {
    const auto r = table1_report(a.t, a.h, a.alpha);
    Table t{{"t", "h", "k", "alpha_per_test", "per_family_rate", "fwer"}, {}};
    t.add({count(r.t), count(r.h), count(r.k), num(r.alpha_per_test), num(r.per_family_rate),
           num(r.fwer)});
    return t;
}

Table power(const Args& a) {
    const double p = power_one_sided_z(a.alpha, a.delta, a.n);
    Table t{{"alpha", "delta", "n", "power"}, {}};
    std::vector<Cell> row{num(a.alpha), num(a.delta), count(a.n), num(p)};
    if (a.conjunction) {
        t.columns.insert(t.columns.end(), {"k", "conjunction_power", "joint_type2"});
        row.push_back(count(a.k));
        row.push_back(num(conjunction_power(p, a.k)));
        row.push_back(num(conjunction_type2(1.0 - p, a.k)));
    }
    t.add(std::move(row));
    return t;
}

Table optimal(const Args& a) {
    const CostModel cost{a.omega, a.delta, a.n, {a.lower, a.upper}};
    const auto best = optimal_alpha(cost);
    Table t{{"objective", "omega", "delta", "n", "alpha_star", "objective_value", "power"}, {}};
    t.add({str("weighted_sum"), num(a.omega), num(a.delta), count(a.n), num(best.alpha_star),
           num(best.objective_value), num(power_one_sided_z(best.alpha_star, a.delta, a.n))});
    return t;
}

Table decide_cmd(const Args& a) {
    const auto battery = io::read_battery_csv(a.battery);
    const bool fdr = a.mode == "fdr";
    Decision d;
    if (fdr) {
        if (!a.method.empty() && parse_method(a.method) != Method::BenjaminiHochberg) {
            throw ValidationError("InvalidMethod", "--method: fdr mode runs Benjamini-Hochberg");
        }
        d = apply_bh(battery, a.alpha);
    } else {
        const auto mode = *parse_testing_mode(a.mode);
        Method method = Method::None;
        if (!a.method.empty()) {
            method = *parse_method(a.method);
        } else if (mode == TestingMode::Disjunction) {
            method = io::default_disjunction_method(a.independent);
        }
        const AlphaConfig config(a.alpha, method, mode);
        if (mode == TestingMode::Disjunction && method == Method::BenjaminiHochberg) {
            throw ValidationError("InvalidMethod",
                                  "--method: bh controls the FDR, not the FWER; use --mode fdr");
        }
        d = decide(battery, config);
    }

    Table t{{"kind", "id", "p", "threshold", "decision"}, {}};
    for (const auto& h : d.per_hypothesis) {
        t.add({str("hypothesis"), str(h.id.str()), num(h.p), num(h.threshold),
               str(to_string(h.outcome))});
    }
    t.add({str("joint"), str(a.joint_id), {}, {}, str(to_string(d.joint))});
    if (d.mode == TestingMode::Disjunction) {
        for (const auto& id : d.rejected()) t.add({str("trigger"), str(id.str()), {}, {}, {}});
    }
    t.add({str("method"), str(fdr ? "bh" : to_string(d.method)), {}, {}, {}});
    for (const auto& note : d.notes) t.add({str("note"), str(note), {}, {}, {}});
    return t;
}

Table classify_cmd(const Args& a, std::ostream& err) {
    const auto file = io::read_scenario_file(a.input);
    if (!file.classification) {
        throw ValidationError("InvalidScenarioFile",
                              a.input + ": missing required section 'classification'");
    }
    for (const auto& w : file.warnings) err << "warning: " << w.code << ": " << w.message << '\n';
    const auto rec = classify_testing_mode(*file.classification);
    Table t{{"key", "value", "detail"}, {}};
    t.add({str("mode"), str(rec.mode ? to_string(*rec.mode) : "not_applicable"), {}});
    t.add({str("adjust_alpha"), str(rec.adjust_alpha ? "true" : "false"), {}});
    for (const auto& r : rec.rationale) {
        t.add({str(r.warning ? "warning" : "rationale"), str(r.code), str(r.text)});
    }
    return t;
}

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("ALPHAGATE_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    const std::string_view text(raw);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ValidationError("InvalidSeed", "ALPHAGATE_SEED: '" + std::string(text) +
                                                 "' is not an unsigned 64-bit integer");
    }
    return value;
}

Table simulate_cmd(const Args& a, bool reps_given, bool seed_given, std::ostream& err) {
    auto file = io::read_scenario_file(a.scenario);
    if (!file.simulation) {
        throw ValidationError("InvalidScenarioFile",
                              a.scenario + ": missing required section 'simulation'");
    }
    for (const auto& w : file.warnings) err << "warning: " << w.code << ": " << w.message << '\n';
    auto scenario = *file.simulation;
    if (reps_given) {
        if (a.reps < 1 || a.reps > sim::kMaxReps) {
            throw ValidationError("InvalidScenario", "--reps must lie in [1, 10^8]");
        }
        scenario.reps = a.reps;
    }
    if (seed_given) {
        scenario.seed = a.seed;
    } else if (!file.seed_from_file) {
        if (const auto env = env_seed()) scenario.seed = *env;
    }

    sim::SimOptions options;
    options.threads = a.threads;
    if (a.kernels != "auto") options.backend = kernels::parse_backend(a.kernels);
    const auto est = sim::simulate(scenario, options);
    err << "elapsed\t" << est.elapsed.count() << "s\tkernels\t" << kernels::to_string(est.backend)
        << '\n';

    const auto& c = est.counts;
    const auto ci = [&](std::uint64_t hits) { return sim::wilson_ci(hits, c.reps, 0.95); };
    Table t{{"metric", "value", "ci95_lower", "ci95_upper"}, {}};
    t.add({str("reps"), count(est.reps), {}, {}});
    t.add({str("seed"), count(est.seed_echo), {}, {}});
    t.add({str("k"), count(scenario.k()), {}, {}});
    t.add({str("design"), str(sim::to_string(scenario.design.kind)), {}, {}});
    if (scenario.design.kind == sim::DesignKind::Equicorrelated) {
        t.add({str("rho"), num(scenario.design.rho), {}, {}});
    }
    t.add({str("alpha_joint"), num(scenario.alpha_joint), {}, {}});
    t.add({str("method"), str(to_string(scenario.method)), {}, {}});
    t.add({str("fwer_hat"), num(est.fwer_hat), num(est.fwer_ci.lower), num(est.fwer_ci.upper)});
    t.add({str("mean_false_positives"), num(est.mean_false_positives), {}, {}});
    t.add({str("fdr_hat"), num(est.fdr_hat), {}, {}});
    const std::pair<TestingMode, std::uint64_t> joint[] = {
        {TestingMode::Individual, c.any_rejection},
        {TestingMode::Disjunction, c.disjunction_rejections},
        {TestingMode::Conjunction, c.conjunction_rejections}};
    for (const auto& [mode, hits] : joint) {
        const auto interval = ci(hits);
        t.add({str("joint_reject_rate." + std::string(to_string(mode))),
               num(est.joint_reject_rate.at(mode)), num(interval.lower), num(interval.upper)});
    }
    const auto& ids = file.family->constituents;
    for (std::size_t i = 0; i < scenario.k(); ++i) {
        const auto interval = ci(c.per_test[i]);
        t.add({str("per_test_rejection." + ids[i].str()), num(est.per_test_rejection[i]),
               num(interval.lower), num(interval.upper)});
    }
    return t;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple-testing decisions, error-rate arithmetic and Monte Carlo checks",
                 "alphagate"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    Args a;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"tsv", "pretty"}));
    app.add_option("--out", g.out_path, "Write results to PATH instead of stdout");
    app.add_option("--precision", g.precision, "Digits after the decimal point")
        ->check(CLI::Range(1, 17));

    const auto alpha_opt = [&](CLI::App* sub, const char* help) {
        sub->add_option("--alpha", a.alpha, help)->required();
    };
    const auto method_names = CLI::IsMember(
        {"none", "bonferroni", "sidak", "holm", "hochberg", "bh"}, CLI::ignore_case);

    auto* rates_cmd = app.add_subcommand("rates", "Familywise and per-family error rates");
    alpha_opt(rates_cmd, "Per-test alpha");
    rates_cmd->add_option("--k", a.k, "Number of tests")->required();

    auto* adjust_cmd = app.add_subcommand("adjust", "Per-test alpha for a joint alpha");
    alpha_opt(adjust_cmd, "Joint alpha");
    adjust_cmd->add_option("--k", a.k, "Number of constituent tests")->required();
    adjust_cmd->add_option("--method", a.method, "bonferroni or sidak")
        ->required()
        ->check(method_names);

    auto* table1_cmd = app.add_subcommand("table1", "Error rates for t tests over h hypotheses");
    table1_cmd->set_help_flag("--help", "Print this help message and exit");
    table1_cmd->add_option("--t", a.t, "Number of significance tests")->required();
    table1_cmd->add_option("--h", a.h, "Number of primary hypotheses")->required();
    alpha_opt(table1_cmd, "Per-test alpha");

    auto* decide_sub = app.add_subcommand("decide", "Judge a battery of p values");
    decide_sub->add_option("--battery", a.battery, "CSV file with header id,p")->required();
    decide_sub->add_option("--mode", a.mode, "individual, disjunction, conjunction or fdr")
        ->required()
        ->check(CLI::IsMember({"individual", "disjunction", "conjunction", "fdr"}));
    alpha_opt(decide_sub, "Joint alpha (or q for fdr)");
    decide_sub->add_option("--method", a.method, "Disjunction procedure")->check(method_names);
    decide_sub->add_flag("--independent", a.independent,
                         "Tests are independent (default disjunction procedure becomes sidak)");
    decide_sub->add_option("--joint-id", a.joint_id, "Label for the joint hypothesis row");

    auto* classify_sub = app.add_subcommand("classify", "Recommend a testing mode");
    classify_sub->add_option("--input", a.input, "Scenario JSON with a classification section")
        ->required();

    auto* simulate_sub = app.add_subcommand("simulate", "Monte Carlo error-rate estimates");
    simulate_sub->add_option("--scenario", a.scenario, "Scenario JSON file")->required();
    auto* reps_opt = simulate_sub->add_option("--reps", a.reps, "Replications (max 10^8)");
    auto* seed_opt = simulate_sub->add_option("--seed", a.seed, "64-bit seed");
    simulate_sub->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
    simulate_sub->add_option("--kernels", a.kernels, "auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* power_sub = app.add_subcommand("power", "Power of a one-sided two-sample z test");
    alpha_opt(power_sub, "Per-test alpha");
    power_sub->add_option("--delta", a.delta, "Standardized effect size")->required();
    power_sub->add_option("--n", a.n, "Per-group sample size")->required();
    auto* k_opt = power_sub->add_option("--k", a.k, "Number of conjoined tests");
    auto* conj_flag = power_sub->add_flag("--conjunction", a.conjunction,
                                          "Also report power when all k tests must succeed");
    conj_flag->needs(k_opt);
    k_opt->needs(conj_flag);

    auto* optimal_sub =
        app.add_subcommand("optimal-alpha", "Alpha minimizing a weighted Type I/II cost");
    optimal_sub->add_option("--omega", a.omega, "Weight of a Type I error, in [0,1]")->required();
    optimal_sub->add_option("--delta", a.delta, "Critical effect size")->required();
    optimal_sub->add_option("--n", a.n, "Per-group sample size")->required();
    optimal_sub->add_option("--lower", a.lower, "Lower alpha bound");
    optimal_sub->add_option("--upper", a.upper, "Upper alpha bound");

    std::vector<std::string> argv_store{"alphagate"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        Table table;
        if (rates_cmd->parsed()) table = rates(a);
        else if (adjust_cmd->parsed()) table = adjust(a);
        else if (table1_cmd->parsed()) table = table1(a);
        else if (decide_sub->parsed()) table = decide_cmd(a);
        else if (classify_sub->parsed()) table = classify_cmd(a, err);
        else if (simulate_sub->parsed()) table = simulate_cmd(a, reps_opt->count() > 0, seed_opt->count() > 0, err);
        else if (power_sub->parsed()) table = power(a);
        else table = optimal(a);

        const auto text = report::render(table, *report::parse_format(g.format), g.precision);
        if (g.out_path.empty()) {
            out << text;
            out.flush();
        } else {
            std::ofstream file(g.out_path, std::ios::binary | std::ios::trunc);
            if (!(file << text) || !file.flush()) {
                err << "error: cannot write '" << g.out_path << "'\n";
                return kRuntimeError;
            }
        }
        return kSuccess;
    } catch (const ValidationError& e) {
        err << "error: " << e.code() << ": " << e.what() << '\n';
        return kValidationError;
    } catch (const DomainError& e) {
        err << "error: DomainError: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace alphagate::cli
