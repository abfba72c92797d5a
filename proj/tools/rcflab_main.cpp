// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rcflab/experiments.hpp"
#include "rcflab/transfer.hpp"

namespace {

using rcflab::experiments::ExperimentConfig;

void add_common_options(CLI::App* sub, ExperimentConfig& cfg, double& tol_val) {
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
    sub->add_option("--grid", cfg.grid_n, "grid subintervals");
    sub->add_option("--iters", cfg.iters, "iteration count");
    sub->add_option("--imax", cfg.i_max, "digit truncation of infinite sums");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
    sub->add_option("--tol", tol_val, "override the built-in pass threshold");
}

int emit(const rcflab::report::ReportRecord& rec, const ExperimentConfig& cfg) {
    const std::string payload = rcflab::experiments::render(rec, cfg);
    if (cfg.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output path: " << cfg.out_path << "\n";
            return 2;
        }
        out << payload;
    }
    return rec.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regular-continued-fraction dynamics: seeded, reproducible experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    double tol_val = 0.0;
    std::string expand_x;
    std::string gk_start = "uniform";
    int empirical_n = 5;

    CLI::App* c_expand =
        app.add_subcommand("expand", "digits, convergents and backward chain of x (iters caps "
                                     "the digit count)");
    c_expand->add_option("x", expand_x, "rational p/q or decimal in (0,1]")->required();
    CLI::App* c_digit = app.add_subcommand("digit-law", "empirical first/second digit law");
    CLI::App* c_gk = app.add_subcommand("gk", "distribution-function recursion toward the "
                                              "Gauss CDF");
    c_gk->add_option("--start", gk_start, "uniform, quadratic, gauss or discontinuous");
    CLI::App* c_egk = app.add_subcommand("empirical-gk", "Monte-Carlo CDF of the n-fold "
                                                         "digit-shift map");
    c_egk->add_option("--n", empirical_n, "number of map applications");
    CLI::App* c_op = app.add_subcommand("operator", "Markov operator iteration and rate");
    CLI::App* c_inv = app.add_subcommand("invariance", "Gauss-measure invariance checks");
    CLI::App* c_con = app.add_subcommand("contraction", "contraction coefficients and the "
                                                        "fixed-point run");
    CLI::App* c_eps = app.add_subcommand("epsilon", "uniform-ergodicity diagnostic");

    for (CLI::App* sub : {c_expand, c_digit, c_gk, c_egk, c_op, c_inv, c_con, c_eps})
        add_common_options(sub, cfg, tol_val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--tol") > 0) cfg.tol = tol_val;

        rcflab::report::ReportRecord rec;
        if (sub == c_expand) rec = rcflab::experiments::run_expand(cfg, expand_x);
        else if (sub == c_digit) rec = rcflab::experiments::run_digit_law(cfg);
        else if (sub == c_gk)
            rec = rcflab::experiments::run_gk(cfg, rcflab::experiments::parse_gk_start(gk_start));
        else if (sub == c_egk) rec = rcflab::experiments::run_empirical_gk(cfg, empirical_n);
        else if (sub == c_op) rec = rcflab::experiments::run_operator(cfg);
        else if (sub == c_inv) rec = rcflab::experiments::run_invariance(cfg);
        else if (sub == c_con) rec = rcflab::experiments::run_contraction(cfg);
        else rec = rcflab::experiments::run_epsilon(cfg);
        return emit(rec, cfg);
    } catch (const rcflab::transfer::GridResolutionError& e) {
        std::cerr << "resolution failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
