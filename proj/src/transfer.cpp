// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace rcflab::transfer {

namespace {

constexpr double kEndpointDust = 1e-12;

double gauss_cdf_node(double x) { return std::log1p(x) / std::numbers::ln2; }

} // namespace

DistributionFunction::DistributionFunction(GridFunction g) : g_(std::move(g)) {
    const int n = g_.size();
    if (std::abs(g_[0]) > kEndpointDust || std::abs(g_[n] - 1.0) > kEndpointDust)
        throw std::invalid_argument("DistributionFunction: endpoints must be 0 and 1");
    g_[0] = 0.0;
    g_[n] = 1.0;
    for (int j = 1; j <= n; ++j) {
        if (g_[j] < g_[j - 1]) {
            if (g_[j - 1] - g_[j] > kEndpointDust)
                throw std::invalid_argument("DistributionFunction: values must be nondecreasing");
            g_[j] = g_[j - 1];
        }
    }
}

GridFunction apply_U(const GridFunction& f, std::int64_t i_max) {
    if (i_max < 10) throw std::invalid_argument("apply_U: i_max must be >= 10");
    const int n = f.size();
    GridFunction out(n);
    const double f0 = f[0];
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= n; ++j) {
        const double x = f.node_x(j);
        const double t_tail = 1.0 / (x + i_max + 1);
        // Ascending-magnitude summation: walk i downward so the kernel
        // weights (x+1)(t_i - t_{i+1}) ~ 1/i^2 grow as they accumulate.
        double t_hi = t_tail;
        double acc = 0.0;
        for (std::int64_t i = i_max; i >= 1; --i) {
            const double t = 1.0 / (x + i);
            acc += (t - t_hi) * f(t);
            t_hi = t;
        }
        out[j] = (x + 1.0) * (acc + f0 * t_tail);
    }
    return out;
}

double u_infinity(const GridFunction& f) {
    return integral_inv1p(f, 0.0, 1.0) / std::numbers::ln2;
}

double integral_inv1p(const GridFunction& f, double a, double b) {
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::domain_error("integral_inv1p: need 0 <= a <= b <= 1");
    const int n = f.size();
    const double h = 1.0 / n;
    int k_lo = std::min(static_cast<int>(a * n), n - 1);
    int k_hi = std::min(static_cast<int>(b * n), n - 1);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double xa = f.node_x(k);
        const double lo = std::max(a, xa);
        const double hi = std::min(b, f.node_x(k + 1));
        if (hi <= lo) continue;
        const double s = (f[k + 1] - f[k]) / h;
        // int (v + s(t-xa))/(1+t) dt = s(hi-lo) + (v - s(1+xa)) log((1+hi)/(1+lo))
        sum += s * (hi - lo) + (f[k] - s * (1.0 + xa)) * std::log1p((hi - lo) / (1.0 + lo));
    }
    return sum;
}

ConvergenceTable iterate_U(const GridFunction& f0, int n_iters, std::int64_t i_max) {
    if (n_iters < 1) throw std::invalid_argument("iterate_U: n_iters must be >= 1");
    const double target = u_infinity(f0);
    GridFunction f = f0;
    ConvergenceTable table;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int n = 1; n <= n_iters; ++n) {
        f = apply_U(f, i_max);
        double err = 0.0;
        for (int j = 0; j <= f.size(); ++j) err = std::max(err, std::abs(f[j] - target));
        const double ratio = (prev > 1e-14) ? err / prev : std::numeric_limits<double>::quiet_NaN();
        table.push_back({n, err, ratio});
        prev = err;
        if (err < 1e-13) break;
    }
    return table;
}

DistributionFunction gk_step(const DistributionFunction& F, std::int64_t i_max,
                             double* clamp_out) {
    if (i_max < 10) throw std::invalid_argument("gk_step: i_max must be >= 10");
    const GridFunction& g = F.grid();
    const int n = g.size();

    std::vector<double> f_inv(i_max + 2); // f_inv[i] = F(1/i)
    for (std::int64_t i = 1; i <= i_max + 1; ++i) f_inv[i] = g(1.0 / static_cast<double>(i));
    const double slope0 = g[1] * n; // F'(0) from the first cell

    GridFunction out(n);
#pragma omp parallel for schedule(static)
    for (int j = 0; j <= n; ++j) {
        const double x = g.node_x(j);
        double acc = 0.0;
        for (std::int64_t i = i_max; i >= 1; --i) acc += f_inv[i] - g(1.0 / (x + i));
        out[j] = acc + slope0 * std::log1p(x / (i_max + 1));
    }

    double clamp = std::max(std::abs(out[0]), std::abs(out[n] - 1.0));
    out[0] = 0.0;
    out[n] = 1.0;
    for (int j = 1; j <= n; ++j) {
        if (out[j] < out[j - 1]) {
            clamp = std::max(clamp, out[j - 1] - out[j]);
            out[j] = out[j - 1];
        } else if (out[j] > 1.0) {
            clamp = std::max(clamp, out[j] - 1.0);
            out[j] = 1.0;
        }
    }
    if (clamp_out) *clamp_out = clamp;
    if (clamp > 1e-6)
        throw GridResolutionError("gk_step: clamp magnitude " + std::to_string(clamp) +
                                  " exceeds 1e-6; increase the grid resolution");
    return DistributionFunction(std::move(out));
}

ConvergenceTable gk_iterate(const DistributionFunction& F0, int n_iters, std::int64_t i_max) {
    if (n_iters < 1) throw std::invalid_argument("gk_iterate: n_iters must be >= 1");
    const int n = F0.size();
    const GridFunction limit = GridFunction::sample(n, gauss_cdf_node);
    DistributionFunction F = F0;
    ConvergenceTable table;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k <= n_iters; ++k) {
        F = gk_step(F, i_max);
        const double err = F.grid().sup_distance(limit);
        const double ratio = (prev > 1e-14) ? err / prev : std::numeric_limits<double>::quiet_NaN();
        table.push_back({k, err, ratio});
        prev = err;
    }
    return table;
}

GridFunction density_to_f(const GridFunction& density) {
    GridFunction out = density;
    for (int j = 0; j <= out.size(); ++j) out[j] *= out.node_x(j) + 1.0;
    return out;
}

GridFunction f_to_density(const GridFunction& f) {
    GridFunction out = f;
    for (int j = 0; j <= out.size(); ++j) out[j] /= out.node_x(j) + 1.0;
    return out;
}

double spectral_gap_estimate(int grid_n, std::int64_t i_max, int n_iters) {
    if (grid_n < 1024)
        throw std::invalid_argument("spectral_gap_estimate: grid_n must be >= 1024");
    GridFunction f0 = GridFunction::sample(grid_n, [](double x) { return x + 1.0; });
    const double mean = u_infinity(f0);
    for (int j = 0; j <= grid_n; ++j) f0[j] -= mean;

    const ConvergenceTable table = iterate_U(f0, n_iters, i_max);
    std::vector<double> ratios;
    double prev_err = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : table) {
        const bool in_window = row.sup_error >= 1e-10 && row.sup_error <= 1e-2 &&
                               prev_err >= 1e-10 && prev_err <= 1e-2;
        prev_err = row.sup_error;
        if (!in_window || !std::isfinite(row.ratio)) continue;
        // A ratio near 1 means the error has stalled at the grid floor;
        // everything after it measures the floor, not the decay.
        if (row.ratio >= 0.9) break;
        ratios.push_back(row.ratio);
    }
    if (ratios.size() < 3)
        throw GridResolutionError("spectral_gap_estimate: fewer than 3 ratios in the "
                                  "geometric regime; increase the grid resolution");
    std::sort(ratios.begin(), ratios.end());
    const std::size_t m = ratios.size() / 2;
    return ratios.size() % 2 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
}

} // namespace rcflab::transfer
