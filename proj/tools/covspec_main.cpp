// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
//
// covspec command-line front end. Talks to the library only through the C API.
//
//   covspec test      run covariance-structure tests on a CSV sample
//   covspec simulate  Monte Carlo size/power experiments
//   covspec mp        tabulate the Marchenko-Pastur functionals
//   covspec validate  closed form vs numerical oracle checks
//
// Exit status: 0 success, 2 invalid input, 3 numerical failure, 1 check failed.

#include "covspec/covspec.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;

// Carries a library status out of nested helpers.
struct Failure {
    covspec_status status;
    std::string message;
};

void check(covspec_status status, const std::string& context = {}) {
    if (status == COVSPEC_OK) return;
    std::string msg = covspec_last_error();
    if (!context.empty()) msg = context + ": " + msg;
    throw Failure{status, msg};
}

[[noreturn]] void invalid(const std::string& message) { throw Failure{COVSPEC_ERR_INVALID, message}; }

struct MatrixDeleter {
    void operator()(covspec_matrix* m) const { covspec_matrix_free(m); }
};
struct ReportDeleter {
    void operator()(covspec_report* r) const { covspec_report_free(r); }
};
struct ScenarioDeleter {
    void operator()(covspec_scenario* s) const { covspec_scenario_free(s); }
};
struct SummaryDeleter {
    void operator()(covspec_summary* s) const { covspec_summary_free(s); }
};
struct StringDeleter {
    void operator()(char* s) const { covspec_string_free(s); }
};

using MatrixPtr = std::unique_ptr<covspec_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<covspec_report, ReportDeleter>;
using ScenarioPtr = std::unique_ptr<covspec_scenario, ScenarioDeleter>;
using SummaryPtr = std::unique_ptr<covspec_summary, SummaryDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

MatrixPtr read_matrix(const std::string& path) {
    covspec_matrix* m = nullptr;
    check(covspec_matrix_read_csv(path.c_str(), &m));
    return MatrixPtr(m);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) invalid("cannot open '" + path + "' for writing");
    out << text;
    if (!out) invalid("write to '" + path + "' failed");
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
    std::string data;
    std::string null_kind = "identity";
    std::string sigma0;
    std::string mean;
    std::string tests = "cwst,wst";
    double alpha = 0.05;
    std::string side = "upper";
    int kappa = 2;
    double beta = 0.0;
    bool estimate_beta = false;
    std::string output;
};

int run_test_command(const TestArgs& args) {
    const MatrixPtr data = read_matrix(args.data);

    covspec_test_options opts;
    covspec_test_options_init(&opts);
    check(covspec_parse_null_kind(args.null_kind.c_str(), &opts.null_kind));
    opts.alpha = args.alpha;
    opts.kappa = args.kappa;
    opts.beta = args.beta;
    opts.estimate_beta = args.estimate_beta ? 1 : 0;
    if (args.side == "upper") opts.side = COVSPEC_TAIL_UPPER;
    else if (args.side == "two-sided") opts.side = COVSPEC_TAIL_TWO_SIDED;
    else invalid("--side must be upper or two-sided");

    MatrixPtr sigma0;
    if (!args.sigma0.empty()) {
        if (opts.null_kind != COVSPEC_NULL_GENERAL) invalid("--sigma0 requires --null general");
        sigma0 = read_matrix(args.sigma0);
        opts.sigma0 = sigma0.get();
    } else if (opts.null_kind == COVSPEC_NULL_GENERAL) {
        invalid("--null general requires --sigma0");
    }

    std::vector<double> mean;
    if (!args.mean.empty()) {
        const MatrixPtr m = read_matrix(args.mean);
        mean.resize(covspec_matrix_rows(m.get()) * covspec_matrix_cols(m.get()));
        check(covspec_matrix_copy(m.get(), mean.data(), mean.size()));
        if (mean.size() != covspec_matrix_cols(data.get())) {
            invalid("--mean has " + std::to_string(mean.size()) + " values, data has " +
                    std::to_string(covspec_matrix_cols(data.get())) + " columns");
        }
        opts.known_mean = mean.data();
    }

    std::vector<ReportPtr> reports;
    for (const auto& name : split_list(args.tests)) {
        covspec_test_kind kind;
        check(covspec_parse_test_kind(name.c_str(), &kind));
        covspec_report* r = nullptr;
        check(covspec_run_test(data.get(), kind, &opts, &r), name);
        reports.emplace_back(r);
    }
    if (reports.empty()) invalid("no tests requested");

    for (const auto& r : reports) {
        char* line = nullptr;
        check(covspec_report_summary(r.get(), &line));
        std::cout << StringPtr(line).get() << "\n";
    }
    std::vector<const covspec_report*> raw;
    for (const auto& r : reports) raw.push_back(r.get());
    char* json = nullptr;
    check(covspec_reports_to_json(raw.data(), raw.size(), &json));
    const StringPtr owned(json);
    write_text(args.output, std::string(json) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string config;
    std::vector<std::pair<std::string, std::string>> settings;  // flag overrides, in order
    std::optional<std::uint64_t> seed;
    bool paper_grid = false;
    std::string output;
    std::string emit_sample;
    std::size_t replication = 0;
};

std::string summary_rows(const covspec_scenario* scenario) {
    covspec_summary* summary = nullptr;
    check(covspec_simulate(scenario, &summary));
    const SummaryPtr owned(summary);
    char* rows = nullptr;
    check(covspec_summary_to_csv(summary, &rows));
    return StringPtr(rows).get();
}

int run_simulate_command(SimulateArgs& args) {
    covspec_scenario* raw = nullptr;
    check(covspec_scenario_create(&raw));
    const ScenarioPtr scenario(raw);
    if (!args.config.empty()) check(covspec_scenario_load_file(scenario.get(), args.config.c_str()));
    for (const auto& [key, value] : args.settings) {
        check(covspec_scenario_set(scenario.get(), key.c_str(), value.c_str()), "--" + key);
    }
    if (args.seed) {
        check(covspec_scenario_set(scenario.get(), "seed", std::to_string(*args.seed).c_str()));
    } else if (!covspec_scenario_has_seed(scenario.get())) {
        const std::uint64_t drawn = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
        check(covspec_scenario_set(scenario.get(), "seed", std::to_string(drawn).c_str()));
        std::cerr << "seed = " << drawn << "\n";
    }

    if (!args.emit_sample.empty()) {
        covspec_matrix* sample = nullptr;
        check(covspec_scenario_sample(scenario.get(), args.replication, &sample));
        const MatrixPtr owned(sample);
        check(covspec_matrix_write_csv(sample, args.emit_sample.c_str()));
        return 0;
    }

    std::string csv = covspec_summary_csv_header();
    if (args.paper_grid) {
        const std::size_t count = covspec_paper_grid_size();
        for (std::size_t i = 0; i < count; ++i) {
            std::int64_t n = 0;
            std::int64_t p = 0;
            double rho = 0.0;
            check(covspec_paper_grid_point(i, &n, &p, &rho));
            covspec_scenario* cell_raw = nullptr;
            check(covspec_scenario_clone(scenario.get(), &cell_raw));
            const ScenarioPtr cell(cell_raw);
            check(covspec_scenario_set(cell.get(), "n", std::to_string(n).c_str()));
            check(covspec_scenario_set(cell.get(), "p", std::to_string(p).c_str()));
            check(covspec_scenario_set(cell.get(), "rho", fmt("%.17g", rho).c_str()));
            csv += summary_rows(cell.get());
        }
    } else {
        check(covspec_scenario_validate(scenario.get()));
        csv += summary_rows(scenario.get());
    }
    write_text(args.output, csv);
    return 0;
}

// ---------------------------------------------------------------------------
// mp

struct MpArgs {
    std::string q = "0.5";
    int kappa = 2;
    double beta = 0.0;
    double tol = 1e-9;
};

int run_mp_command(const MpArgs& args) {
    std::vector<double> qs;
    for (const auto& item : split_list(args.q)) {
        try {
            std::size_t used = 0;
            qs.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            invalid("--q: cannot parse '" + item + "'");
        }
    }
    if (qs.empty()) invalid("--q: no values");

    std::ostringstream table;
    table << "q,F,mean,variance,F_quadrature,abs_diff\n";
    for (double q : qs) {
        double f = 0.0;
        double mean = 0.0;
        double var = 0.0;
        check(covspec_mp_limit_F(q, &f), "q=" + fmt("%g", q));
        check(covspec_mp_limit_mean(q, args.kappa, args.beta, &mean), "q=" + fmt("%g", q));
        check(covspec_mp_limit_variance(q, args.kappa, args.beta, &var), "q=" + fmt("%g", q));
        // The law degenerates to a point mass at 1 when q = 0, where f vanishes.
        double quad = 0.0;
        if (q > 0.0) check(covspec_mp_quadrature_F(q, args.tol, &quad), "q=" + fmt("%g", q));
        table << fmt("%.6g", q) << ',' << fmt("%.12g", f) << ',' << fmt("%.12g", mean) << ','
                  << fmt("%.12g", var) << ',' << fmt("%.12g", quad) << ',' << fmt("%.3e", std::abs(f - quad))
                  << "\n";
    }
    std::cout << table.str();
    return 0;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
    bool clt = false;
    std::size_t n = 2000;
    std::size_t reps = 500;
    std::uint64_t seed = 20260101;
    unsigned workers = 0;
};

int run_validate_command(const ValidateArgs& args) {
    bool ok = true;
    double worst = 0.0;
    for (int k = 1; k <= 19; ++k) {
        const double q = 0.05 * k;
        double closed = 0.0;
        double quad = 0.0;
        check(covspec_mp_limit_F(q, &closed));
        check(covspec_mp_quadrature_F(q, 1e-9, &quad));
        worst = std::max(worst, std::abs(closed - quad));
    }
    const bool quad_ok = worst < 1e-7;
    ok &= quad_ok;
    std::cout << (quad_ok ? "PASS" : "FAIL") << "  closed-form F vs quadrature, q=0.05..0.95: max |diff| = "
              << fmt("%.3e", worst) << " (< 1e-7)\n";

    if (args.clt) {
        for (double beta : {0.0, 1.5}) {
            covspec_clt_moments m{};
            check(covspec_mp_clt_moments(0.2, 2, beta, args.n, args.reps, args.seed, args.workers, &m));
            double mean = 0.0;
            double var = 0.0;
            check(covspec_mp_limit_mean(0.2, 2, beta, &mean));
            check(covspec_mp_limit_variance(0.2, 2, beta, &var));
            const bool mean_ok = std::abs(m.mean - mean) <= 3.0 * m.stderr_mean;
            const double ratio = m.variance / var;
            const bool var_ok = ratio >= 0.75 && ratio <= 1.30;
            ok &= mean_ok && var_ok;
            std::cout << (mean_ok ? "PASS" : "FAIL") << "  CLT mean, beta=" << beta << ": " << fmt("%.4f", m.mean)
                      << " vs " << fmt("%.4f", mean) << " (stderr " << fmt("%.4f", m.stderr_mean) << ")\n";
            std::cout << (var_ok ? "PASS" : "FAIL") << "  CLT variance ratio, beta=" << beta << ": "
                      << fmt("%.4f", ratio) << " in [0.75, 1.30]\n";
        }
    }
    return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covspec: corrected Wald score tests for large-dimensional covariance structure"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(covspec_version()));

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "Run covariance tests on a CSV sample (rows = observations)");
    test->add_option("-d,--data", test_args.data, "Data CSV")->required();
    test->add_option("--null", test_args.null_kind, "identity | sphericity | general")->capture_default_str();
    test->add_option("--sigma0", test_args.sigma0, "Sigma0 CSV (with --null general)");
    test->add_option("--mean", test_args.mean, "Known mean as a one-row CSV");
    test->add_option("--tests", test_args.tests, "Comma list of cwst, wst, lwt, nht")->capture_default_str();
    test->add_option("--alpha", test_args.alpha, "Significance level")->capture_default_str();
    test->add_option("--side", test_args.side, "CWST rejection rule: upper | two-sided")->capture_default_str();
    test->add_option("--kappa", test_args.kappa, "2 for real data, 1 for complex")->capture_default_str();
    auto* beta_opt = test->add_option("--beta", test_args.beta, "Fourth-cumulant parameter")->capture_default_str();
    test->add_flag("--estimate-beta", test_args.estimate_beta, "Estimate beta from the data")->excludes(beta_opt);
    test->add_option("-o,--output", test_args.output, "JSON report path (default: stdout)");

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo empirical size and power");
    simulate->add_option("-c,--config", sim_args.config, "Scenario file of key = value lines");
    for (const char* key : {"n", "p", "population", "mu0", "rho", "tests", "alpha", "reps", "side", "beta",
                            "workers", "gamma_shape", "gamma_scale"}) {
        simulate->add_option_function<std::string>(
            std::string("--") + key, [&sim_args, key](const std::string& v) { sim_args.settings.emplace_back(key, v); },
            std::string("Scenario ") + key);
    }
    simulate->add_flag_function(
        "--estimate-beta", [&sim_args](std::int64_t) { sim_args.settings.emplace_back("estimate_beta", "true"); },
        "Use the plug-in beta estimate in CWST");
    simulate->add_option("--seed", sim_args.seed, "Master seed (default: drawn and printed)");
    simulate->add_flag("--paper-grid", sim_args.paper_grid, "Run every cell of the standard (n, p, rho) size/power grid");
    simulate->add_option("-o,--output", sim_args.output, "CSV path (default: stdout)");
    simulate->add_option("--emit-sample", sim_args.emit_sample, "Write one generated sample as CSV and exit");
    simulate->add_option("--replication", sim_args.replication, "Replication index for --emit-sample");

    MpArgs mp_args;
    auto* mp = app.add_subcommand("mp", "Tabulate F(q), mean and variance for f(x) = (1 - 1/x)^2");
    mp->add_option("--q", mp_args.q, "Comma list of ratios in [0, 1)")->capture_default_str();
    mp->add_option("--kappa", mp_args.kappa)->capture_default_str();
    mp->add_option("--beta", mp_args.beta)->capture_default_str();
    mp->add_option("--tol", mp_args.tol, "Quadrature absolute tolerance")->capture_default_str();

    ValidateArgs val_args;
    auto* validate = app.add_subcommand("validate", "Check closed forms against numerical oracles");
    validate->add_flag("--clt", val_args.clt, "Also run the Monte Carlo CLT moment check (minutes)");
    validate->add_option("--n", val_args.n)->capture_default_str();
    validate->add_option("--reps", val_args.reps)->capture_default_str();
    validate->add_option("--seed", val_args.seed)->capture_default_str();
    validate->add_option("--workers", val_args.workers)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (test->parsed()) return run_test_command(test_args);
        if (simulate->parsed()) return run_simulate_command(sim_args);
        if (mp->parsed()) return run_mp_command(mp_args);
        if (validate->parsed()) return run_validate_command(val_args);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return static_cast<int>(f.status);
    }
    return kExitInvalid;
}
