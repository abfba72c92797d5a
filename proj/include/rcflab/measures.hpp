// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rcflab/grid.hpp"
#include "rcflab/rng.hpp"

namespace rcflab::measures {

// CDF of the Gauss measure dx/((1+x) log 2) on [0,1].
inline double gauss_cdf(double x) { return std::log1p(x) / std::numbers::ln2; }

double gauss_measure_interval(double a, double b);

// Inverse-CDF sample: 2^V - 1 for V uniform on [0,1).
inline double sample_gauss(RngStream& rng) {
    return std::expm1(rng.next_unit() * std::numbers::ln2);
}

// Probability that the first digit equals i under Lebesgue measure.
inline double lebesgue_digit_prob(std::int64_t i) {
    const double d = static_cast<double>(i);
    return 1.0 / (d * (d + 1.0));
}

struct QuadratureResult {
    double value;
    double est_error; // distance to the closed-form target
    int pieces;
};

// Integrates x -> Q(x, [0,ubound)) against the Gauss density, splitting at
// the one breakpoint where the threshold digit jumps, and compares with
// gauss_measure_interval(0, ubound). quad_tol is the caller's pass threshold
// and only validated here.
QuadratureResult check_gamma_invariance(double ubound, double quad_tol);

// Two-sided Kolmogorov-Smirnov distance of a sample against a CDF.
double ks_statistic(std::vector<double> samples, double (*cdf)(double));

// Asymptotic critical value c(alpha)/sqrt(n) for alpha in {0.05, 0.01}.
double ks_critical(double alpha, std::int64_t nsamples);

// Draws nsamples from the Gauss measure, pushes them through the digit-shift
// map, and returns the KS distance of the result against the Gauss CDF.
double check_tau_invariance(std::int64_t nsamples, std::uint64_t seed);

// CDF of the pushforward of the Gauss measure through the digit-shift map,
// summed over preimage branches (1/(y+i), 1/i] with the exact telescoped
// tail. Equals gauss_cdf(y) up to rounding.
double tau_pushforward_cdf(double y, std::int64_t i_max);

// Inverse-CDF sampler for a nonnegative piecewise-linear density on [0,1]
// with unit mass. The per-cell CDF is quadratic; inversion uses the
// subtraction-free quadratic root.
class DensitySampler {
  public:
    explicit DensitySampler(const GridFunction& density);
    double operator()(double u) const;

  private:
    GridFunction density_;
    std::vector<double> cdf_;
};

struct PushforwardPair {
    double monte_carlo;
    double quadrature;
};

// Mass that n steps of the digit-shift map carry into [0, x), starting from
// the given density: once by Monte Carlo, once by exact piecewise
// integration of U^n applied to (x+1) * density.
PushforwardPair check_pushforward_identity(const GridFunction& density, int n, double x,
                                           std::int64_t nsamples, std::uint64_t seed,
                                           std::int64_t i_max);

} // namespace rcflab::measures
