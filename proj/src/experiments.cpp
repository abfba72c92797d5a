// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rcflab/cf.hpp"
#include "rcflab/grid.hpp"
#include "rcflab/measures.hpp"
#include "rcflab/rational.hpp"
#include "rcflab/rng.hpp"
#include "rcflab/rscc.hpp"
#include "rcflab/transfer.hpp"

namespace rcflab::experiments {

namespace {

using report::Cell;
using report::ReportRecord;

constexpr std::int64_t kChunk = 65536;

// Frozen empirical operator rate; used only to scale pass bounds.
constexpr double kOperatorRate = 0.3037;

constexpr double kGkFloorTol = 5e-7;
constexpr double kSigmaUnits = 4.0;
constexpr std::int64_t kMinConditionalHits = 1000;
constexpr double kDriftTol = 0.01;
constexpr double kQuadTol = 1e-8;
constexpr double kBranchTol = 1e-10;
constexpr double kFixedPointTol = 1e-12;
constexpr double kEpsilonTol = 0.01;

Cell cell(std::int64_t v) { return Cell(v); }
Cell cell(int v) { return Cell(static_cast<std::int64_t>(v)); }
Cell cell(double v) { return Cell(v); }
Cell cell(std::string v) { return Cell(std::move(v)); }

std::vector<std::pair<std::string, Cell>> echo_config(const ExperimentConfig& cfg) {
    return {
        {"seed", cell(std::to_string(cfg.seed))},
        {"samples", cell(cfg.samples)},
        {"grid", cell(cfg.grid_n)},
        {"iters", cell(cfg.iters)},
        {"imax", cell(cfg.i_max)},
    };
}

double gk_start_threshold(GkStart start) {
    switch (start) {
        case GkStart::uniform:
        case GkStart::quadratic:
        case GkStart::gauss:
        case GkStart::discontinuous: return kGkFloorTol;
    }
    throw std::logic_error("unreachable");
}

const char* gk_start_name(GkStart start) {
    switch (start) {
        case GkStart::uniform: return "uniform";
        case GkStart::quadratic: return "quadratic";
        case GkStart::gauss: return "gauss";
        case GkStart::discontinuous: return "discontinuous";
    }
    throw std::logic_error("unreachable");
}

} // namespace

void ExperimentConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (grid_n < 16) throw std::invalid_argument("config: grid must be >= 16");
    if (iters < 1) throw std::invalid_argument("config: iters must be >= 1");
    if (i_max < 10) throw std::invalid_argument("config: imax must be >= 10");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    if (tol && !(*tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
}

GkStart parse_gk_start(const std::string& name) {
    if (name == "uniform") return GkStart::uniform;
    if (name == "quadratic") return GkStart::quadratic;
    if (name == "gauss") return GkStart::gauss;
    if (name == "discontinuous") return GkStart::discontinuous;
    throw std::invalid_argument("gk start must be uniform, quadratic, gauss or discontinuous");
}

report::ReportRecord run_expand(const ExperimentConfig& cfg, const std::string& input) {
    cfg.validate();
    const Rational x = parse_rational(input);
    if (!(x > 0) || x > 1) throw std::invalid_argument("expand: x must be in (0,1]");

    const cf::DigitSequence seq = cf::rcf_digits(x, cfg.iters);
    const cf::Convergents conv = cf::convergents(seq.digits);
    const std::vector<Rational> chain = cf::backward_chain(seq.digits);

    ReportRecord rec;
    rec.experiment = "expand";
    rec.parameters = echo_config(cfg);
    rec.parameters.emplace_back("x", cell(input));
    rec.parameters.emplace_back("terminated", cell(std::string(seq.terminated ? "true" : "false")));
    rec.table.columns = {"k", "digit", "p", "q", "s_exact", "s"};
    for (std::size_t k = 0; k < seq.digits.size(); ++k) {
        rec.table.rows.push_back({cell(static_cast<std::int64_t>(k + 1)), cell(seq.digits[k]),
                                  cell(conv.p[k].str()), cell(conv.q[k].str()),
                                  cell(to_string(chain[k])), cell(to_double(chain[k]))});
    }
    rec.pass = true;
    rec.tolerance = 0.0;
    return rec;
}

report::ReportRecord run_digit_law(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::int64_t n = cfg.samples;
    const std::int64_t nchunks = (n + kChunk - 1) / kChunk;

    struct Tally {
        std::array<std::int64_t, 11> first{};
        std::array<std::array<std::int64_t, 11>, 11> second{};
    };
    std::vector<Tally> tallies(nchunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        RngStream rng(cfg.seed, fnv1a64("digit-law"), static_cast<std::uint64_t>(c));
        const std::int64_t count = std::min(kChunk, n - c * kChunk);
        Tally& t = tallies[c];
        for (std::int64_t k = 0; k < count; ++k) {
            const cf::DigitStep s1 = cf::digit_step(rng.next_unit_open());
            const std::int64_t a1 = s1.digit;
            if (a1 <= 10) {
                ++t.first[a1];
                if (s1.remainder > 0.0) {
                    const std::int64_t a2 = cf::digit_step(s1.remainder).digit;
                    if (a2 <= 10) ++t.second[a1][a2];
                }
            }
        }
    }
    Tally total;
    for (const Tally& t : tallies) {
        for (int i = 1; i <= 10; ++i) {
            total.first[i] += t.first[i];
            for (int j = 1; j <= 10; ++j) total.second[i][j] += t.second[i][j];
        }
    }

    const double sigma_units = cfg.tol.value_or(kSigmaUnits);
    ReportRecord rec;
    rec.experiment = "digit-law";
    rec.parameters = echo_config(cfg);
    rec.table.columns = {"kind", "i", "j", "count", "expected", "empirical", "z", "checked"};
    bool pass = true;
    const auto push = [&](const char* kind, int i, int j, std::int64_t hits, std::int64_t tries,
                          double p) {
        const double emp = tries > 0 ? static_cast<double>(hits) / tries : 0.0;
        const double sd = std::sqrt(tries * p * (1.0 - p));
        const double z = sd > 0.0 ? (hits - tries * p) / sd : 0.0;
        const bool checked = hits >= kMinConditionalHits;
        if (checked && !(std::abs(z) <= sigma_units)) pass = false;
        rec.table.rows.push_back({cell(std::string(kind)), cell(i), cell(j), cell(hits), cell(p),
                                  cell(emp), cell(z), cell(checked ? 1 : 0)});
    };
    for (int i = 1; i <= 10; ++i)
        push("a1", i, 0, total.first[i], n, measures::lebesgue_digit_prob(i));
    for (int i = 1; i <= 10; ++i) {
        const double s1 = 1.0 / i; // backward-chain state after digit i
        for (int j = 1; j <= 10; ++j)
            push("a2", i, j, total.second[i][j], total.first[i], rscc::p_kernel(s1, j));
    }
    rec.pass = pass;
    rec.tolerance = sigma_units;
    return rec;
}

report::ReportRecord run_gk(const ExperimentConfig& cfg, GkStart start) {
    cfg.validate();
    const auto cdf0 = [start](double x) -> double {
        switch (start) {
            case GkStart::uniform: return x;
            case GkStart::quadratic: return x * x;
            case GkStart::gauss: return measures::gauss_cdf(x);
            case GkStart::discontinuous: return std::min(2.0 * x, 1.0);
        }
        return 0.0;
    };
    const auto F0 = transfer::DistributionFunction::sample(cfg.grid_n, cdf0);
    const ConvergenceTable table = transfer::gk_iterate(F0, cfg.iters, cfg.i_max);

    const double threshold = cfg.tol.value_or(gk_start_threshold(start));
    ReportRecord rec;
    rec.experiment = "gk";
    rec.parameters = echo_config(cfg);
    rec.parameters.emplace_back("start", cell(std::string(gk_start_name(start))));
    rec.table.columns = {"n", "sup_error", "ratio"};
    for (const auto& row : table)
        rec.table.rows.push_back({cell(row.n), cell(row.sup_error), cell(row.ratio)});
    rec.pass = !table.empty() && table.back().sup_error < threshold;
    rec.tolerance = threshold;
    return rec;
}

report::ReportRecord run_empirical_gk(const ExperimentConfig& cfg, int n) {
    cfg.validate();
    if (n < 0 || n > 10) throw std::invalid_argument("empirical-gk: n must be in [0,10]");

    std::vector<double> x(cfg.samples);
    const std::int64_t nchunks = (cfg.samples + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        RngStream rng(cfg.seed, fnv1a64("empirical-gk"), static_cast<std::uint64_t>(c));
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk, cfg.samples);
        for (std::int64_t k = lo; k < hi; ++k) x[k] = rng.next_unit_open();
    }

    const double width = 3.0 / std::sqrt(static_cast<double>(cfg.samples));
    ReportRecord rec;
    rec.experiment = "empirical-gk";
    rec.parameters = echo_config(cfg);
    rec.parameters.emplace_back("n", cell(n));
    rec.table.columns = {"n", "distance", "bound"};
    bool pass = true;
    double bound = 0.0;
    for (int k = 0;; ++k) {
        const double dist = measures::ks_statistic(x, &measures::gauss_cdf);
        bound = cfg.tol.value_or(0.2 * std::pow(kOperatorRate, k) + width);
        if (!(dist < bound)) pass = false;
        rec.table.rows.push_back({cell(k), cell(dist), cell(bound)});
        if (k == n) break;
#pragma omp parallel for schedule(static)
        for (std::int64_t s = 0; s < cfg.samples; ++s) x[s] = cf::gauss_map(x[s]);
    }
    rec.pass = pass;
    rec.tolerance = bound;
    return rec;
}

report::ReportRecord run_operator(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.grid_n < 2048)
        throw std::invalid_argument("operator: grid must be >= 2048 (rate is cross-checked "
                                    "at half resolution)");
    const auto f0 = GridFunction::sample(cfg.grid_n, [](double v) { return v + 1.0; });
    const ConvergenceTable table = transfer::iterate_U(f0, cfg.iters, cfg.i_max);
    const double q_fine = transfer::spectral_gap_estimate(cfg.grid_n, cfg.i_max, cfg.iters);
    const double q_coarse = transfer::spectral_gap_estimate(cfg.grid_n / 2, cfg.i_max, cfg.iters);
    const double drift = std::abs(q_fine - q_coarse);

    const double drift_tol = cfg.tol.value_or(kDriftTol);
    ReportRecord rec;
    rec.experiment = "operator";
    rec.parameters = echo_config(cfg);
    rec.table.columns = {"series", "n", "value"};
    for (const auto& row : table)
        rec.table.rows.push_back({cell(std::string("error")), cell(row.n), cell(row.sup_error)});
    for (const auto& row : table)
        if (std::isfinite(row.ratio))
            rec.table.rows.push_back({cell(std::string("ratio")), cell(row.n), cell(row.ratio)});
    rec.table.rows.push_back({cell(std::string("q_hat")), cell(cfg.grid_n), cell(q_fine)});
    rec.table.rows.push_back({cell(std::string("q_hat")), cell(cfg.grid_n / 2), cell(q_coarse)});
    rec.table.rows.push_back({cell(std::string("drift")), cell(0), cell(drift)});
    rec.pass = q_fine > 0.0 && q_fine < 1.0 && drift < drift_tol;
    rec.tolerance = drift_tol;
    return rec;
}

report::ReportRecord run_invariance(const ExperimentConfig& cfg) {
    cfg.validate();
    const double quad_tol = cfg.tol.value_or(kQuadTol);

    ReportRecord rec;
    rec.experiment = "invariance";
    rec.parameters = echo_config(cfg);
    rec.table.columns = {"series", "x", "value", "target", "abs_error", "bound"};
    bool pass = true;
    const auto push = [&](const char* series, double x, double value, double target,
                          double abs_error, double bound) {
        if (!(abs_error < bound)) pass = false;
        rec.table.rows.push_back({cell(std::string(series)), cell(x), cell(value), cell(target),
                                  cell(abs_error), cell(bound)});
    };

    for (int k = 1; k <= 20; ++k) {
        const double u = k / 20.0;
        const auto qr = measures::check_gamma_invariance(u, quad_tol);
        push("gamma", u, qr.value, measures::gauss_measure_interval(0.0, u), qr.est_error,
             quad_tol);
    }
    const double ks = measures::check_tau_invariance(cfg.samples, cfg.seed);
    const double crit = measures::ks_critical(0.01, cfg.samples);
    push("tau_ks", static_cast<double>(cfg.samples), ks, crit, ks, crit);
    for (const double y : {0.25, 0.5, 0.75}) {
        const double v = measures::tau_pushforward_cdf(y, cfg.i_max);
        const double t = measures::gauss_cdf(y);
        push("tau_branch", y, v, t, std::abs(v - t), kBranchTol);
    }
    rec.pass = pass;
    rec.tolerance = quad_tol;
    return rec;
}

report::ReportRecord run_contraction(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto rep = rscc::contraction_report(cfg.grid_n, cfg.i_max);
    const double fp_tol = cfg.tol.value_or(kFixedPointTol);
    const double target = std::sqrt(2.0) - 1.0;

    ReportRecord rec;
    rec.experiment = "contraction";
    rec.parameters = echo_config(cfg);
    rec.table.columns = {"quantity", "param", "value"};
    rec.table.rows.push_back({cell(std::string("r_hat")), cell(1.0), cell(rep.r_hat[0])});
    rec.table.rows.push_back({cell(std::string("r_hat")), cell(2.0), cell(rep.r_hat[1])});
    rec.table.rows.push_back({cell(std::string("R_hat")), cell(1.0), cell(rep.R1_hat)});
    bool pass = rep.r_hat[0] < 1.0 && std::isfinite(rep.R1_hat);
    for (const double x0 : {0.0, 0.5, 1.0}) {
        double v = x0;
        for (int k = 0; k < 60; ++k) v = 1.0 / (v + 2.0);
        const double residual = std::abs(v - target);
        if (!(residual < fp_tol)) pass = false;
        rec.table.rows.push_back({cell(std::string("fp_residual")), cell(x0), cell(residual)});
    }
    rec.pass = pass;
    rec.tolerance = fp_tol;
    return rec;
}

report::ReportRecord run_epsilon(const ExperimentConfig& cfg) {
    cfg.validate();
    constexpr int kSteps = 8;
    constexpr int kThresholds = 20;
    // The diagnostic needs a state grid, not the full operator resolution;
    // the propagated functions have Lipschitz constant below 1/4.
    const int n_grid = std::min(cfg.grid_n, 1024);
    const double eps_tol = cfg.tol.value_or(kEpsilonTol);

    std::vector<GridFunction> f;
    std::vector<double> target;
    for (int m = 1; m <= kThresholds; ++m) {
        f.push_back(GridFunction::sample(
            n_grid, [m](double w) { return rscc::p_kernel_tail(w, m); }));
        target.push_back(std::log1p(1.0 / m) / std::numbers::ln2);
    }

    ReportRecord rec;
    rec.experiment = "epsilon";
    rec.parameters = echo_config(cfg);
    rec.parameters.emplace_back("state_grid", cell(n_grid));
    rec.table.columns = {"n", "epsilon"};
    std::vector<double> eps(kSteps + 1, 0.0);
    for (int n = 1; n <= kSteps; ++n) {
        double worst = 0.0;
        for (int m = 0; m < kThresholds; ++m)
            for (int j = 0; j <= n_grid; ++j)
                worst = std::max(worst, std::abs(f[m][j] - target[m]));
        eps[n] = worst;
        rec.table.rows.push_back({cell(n), cell(worst)});
        if (n < kSteps)
            for (int m = 0; m < kThresholds; ++m) f[m] = transfer::apply_U(f[m], cfg.i_max);
    }
    bool pass = eps[kSteps] < eps_tol;
    for (int n = 2; n <= kSteps; ++n)
        if (!(eps[n] < eps[n - 1])) pass = false;
    rec.pass = pass;
    rec.tolerance = eps_tol;
    return rec;
}

std::string render(const report::ReportRecord& rec, const ExperimentConfig& cfg) {
    return cfg.format == "json" ? report::to_json(rec) : report::to_csv(rec);
}

} // namespace rcflab::experiments
