// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rcflab/report.hpp"

namespace rcflab::experiments {

struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::int64_t samples = 1'000'000;
    int grid_n = 4096;
    int iters = 30;
    std::int64_t i_max = 10'000;
    std::string format = "csv"; // csv or json
    std::string out_path;       // empty: stdout
    std::optional<double> tol;  // overrides the command's built-in threshold

    void validate() const; // throws std::invalid_argument
};

enum class GkStart { uniform, quadratic, gauss, discontinuous };

GkStart parse_gk_start(const std::string& name);

report::ReportRecord run_expand(const ExperimentConfig& cfg, const std::string& input);
report::ReportRecord run_digit_law(const ExperimentConfig& cfg);
report::ReportRecord run_gk(const ExperimentConfig& cfg, GkStart start);
report::ReportRecord run_empirical_gk(const ExperimentConfig& cfg, int n);
report::ReportRecord run_operator(const ExperimentConfig& cfg);
report::ReportRecord run_invariance(const ExperimentConfig& cfg);
report::ReportRecord run_contraction(const ExperimentConfig& cfg);
report::ReportRecord run_epsilon(const ExperimentConfig& cfg);

// CSV or JSON per cfg.format.
std::string render(const report::ReportRecord& rec, const ExperimentConfig& cfg);

} // namespace rcflab::experiments
