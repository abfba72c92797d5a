// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/rscc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcflab/rng.hpp"

namespace rcflab::rscc {

System rcf_system() {
    return System{
        [](double w, std::int64_t i) { return u_map(w, i); },
        [](double w, std::int64_t i) { return p_kernel(w, i); },
        [](double w, std::int64_t m) { return p_kernel_tail(w, m); },
    };
}

double iterate_u(double w, std::span<const std::int64_t> word) {
    for (std::int64_t i : word) w = u_map(w, i);
    return w;
}

double word_probability(double w, std::span<const std::int64_t> word) {
    double prob = 1.0; // X^0 x A = A: the empty word is certain
    for (std::int64_t i : word) {
        prob *= p_kernel(w, i);
        w = u_map(w, i);
    }
    return prob;
}

std::int64_t q_threshold_digit(double w, double ubound) {
    // Smallest i with 1/(w+i) < ubound, i.e. i > 1/ubound - w.
    double guess = std::floor(1.0 / ubound - w) + 1.0;
    if (guess < 1.0) guess = 1.0;
    auto m = static_cast<std::int64_t>(guess);
    while (m > 1 && u_map(w, m - 1) < ubound) --m;
    while (u_map(w, m) >= ubound) ++m;
    return m;
}

double q_kernel_interval(double w, double ubound) {
    if (!(ubound > 0.0) || ubound > 1.0)
        throw std::domain_error("q_kernel_interval: ubound outside (0,1]");
    return p_kernel_tail(w, q_threshold_digit(w, ubound));
}

std::int64_t sample_digit(double w, double u) {
    // Smallest m with tail(w, m+1) <= u; closed-form guess, then correct.
    double guess = std::ceil((w + 1.0) / u - w - 1.0);
    if (guess < 1.0) guess = 1.0;
    auto m = static_cast<std::int64_t>(guess);
    while (m > 1 && p_kernel_tail(w, m) <= u) --m;
    while (p_kernel_tail(w, m + 1) > u) ++m;
    return m;
}

ChainTrajectory simulate_chain(const System& sys, double w0, int n, std::uint64_t seed,
                               std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("simulate_chain: n must be >= 1");
    ChainTrajectory out;
    out.seed = seed;
    out.w0 = w0;
    out.xi.reserve(n);
    out.zeta.reserve(n + 1);
    out.zeta.push_back(w0);
    RngStream rng(seed, fnv1a64("chain"), stream);
    double w = w0;
    for (int k = 0; k < n; ++k) {
        const double u = rng.next_unit_open();
        // Closed-form guess is exact for the shipped instance; the
        // correction loop fixes it up for any monotone tail.
        double guess = std::ceil((w + 1.0) / u - w - 1.0);
        if (guess < 1.0) guess = 1.0;
        auto digit = static_cast<std::int64_t>(guess);
        while (digit > 1 && sys.kernel_tail(w, digit) <= u) --digit;
        while (sys.kernel_tail(w, digit + 1) > u) ++digit;
        out.xi.push_back(digit);
        w = sys.point_map(w, digit);
        out.zeta.push_back(w);
    }
    return out;
}

namespace {

// Pair-grid supremum of a ratio functional: all ordered pairs from a
// uniform grid, near-diagonal pairs at distance 1e-3, and the analytic
// diagonal handled by the caller.
struct PairGrid {
    std::vector<double> nodes;
    std::vector<std::pair<double, double>> pairs;
};

PairGrid make_pair_grid(int grid_n, int cap) {
    const int n = std::min(grid_n, cap);
    PairGrid g;
    g.nodes.resize(n + 1);
    for (int j = 0; j <= n; ++j) g.nodes[j] = static_cast<double>(j) / n;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            if (a != b) g.pairs.emplace_back(g.nodes[a], g.nodes[b]);
    const double delta = 1e-3;
    for (double w : g.nodes) {
        if (w + delta <= 1.0) {
            g.pairs.emplace_back(w, w + delta);
            g.pairs.emplace_back(w + delta, w);
        }
        if (w - delta >= 0.0) {
            g.pairs.emplace_back(w, w - delta);
            g.pairs.emplace_back(w - delta, w);
        }
    }
    return g;
}

double ratio_k1(const System& sys, double wa, double wb, std::int64_t i_cap) {
    double sum = 0.0;
    for (std::int64_t i = 1; i <= i_cap; ++i)
        sum += sys.kernel(wa, i) / ((wa + i) * (wb + i));
    sum += sys.kernel_tail(wa, i_cap + 1) / ((wa + i_cap + 1) * (wb + i_cap + 1));
    return sum;
}

double ratio_k2(const System& sys, double wa, double wb, std::int64_t i_cap) {
    double sum = 0.0;
    for (std::int64_t i = 1; i <= i_cap; ++i) {
        const double shrink = 1.0 / ((wa + i) * (wb + i));
        const double ua = sys.point_map(wa, i);
        const double ub = sys.point_map(wb, i);
        double inner = 0.0;
        for (std::int64_t j = 1; j <= i_cap; ++j)
            inner += sys.kernel(ua, j) / ((ua + j) * (ub + j));
        inner += sys.kernel_tail(ua, i_cap + 1) / ((ua + i_cap + 1) * (ub + i_cap + 1));
        sum += sys.kernel(wa, i) * shrink * inner;
    }
    // Both map factors beyond the cap are below 1/(i_cap+1)^2; the inner
    // word sum is at most 1 of kernel mass times that shrink.
    sum += sys.kernel_tail(wa, i_cap + 1) / ((wa + i_cap + 1) * (wb + i_cap + 1));
    return sum;
}

} // namespace

double contraction_r(const System& sys, int k, int grid_n, std::int64_t i_max) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("contraction_r: only k = 1 and k = 2 are supported "
                                    "(word sum grows as i_max^k)");
    if (grid_n < 100) throw std::invalid_argument("contraction_r: grid_n must be >= 100");

    // The ratio terms decay like i^-4, so a modest digit cap plus the tail
    // bound already reproduces the i_max sum to ~1e-9.
    const std::int64_t i_cap = (k == 1) ? std::min<std::int64_t>(i_max, 2000)
                                        : std::min<std::int64_t>(i_max, 128);
    const PairGrid grid = make_pair_grid(grid_n, k == 1 ? 256 : 64);

    double best = 0.0;
    if (k == 1) {
        for (auto [wa, wb] : grid.pairs) best = std::max(best, ratio_k1(sys, wa, wb, i_cap));
        for (double w : grid.nodes) best = std::max(best, ratio_k1(sys, w, w, i_cap));
    } else {
        for (auto [wa, wb] : grid.pairs) best = std::max(best, ratio_k2(sys, wa, wb, i_cap));
        for (double w : grid.nodes) best = std::max(best, ratio_k2(sys, w, w, i_cap));
    }
    return best;
}

double contraction_R1(const System& sys, int grid_n, std::int64_t max_threshold) {
    if (grid_n < 100) throw std::invalid_argument("contraction_R1: grid_n must be >= 100");
    const PairGrid grid = make_pair_grid(grid_n, 256);
    const double delta = 0.5e-5;

    double best = 0.0;
    for (std::int64_t m = 1; m <= max_threshold; ++m) {
        for (auto [wa, wb] : grid.pairs) {
            const double diff = std::abs(sys.kernel_tail(wa, m) - sys.kernel_tail(wb, m));
            best = std::max(best, diff / std::abs(wa - wb));
        }
        for (double w : grid.nodes) {
            // Central difference stands in for the diagonal derivative.
            const double lo = std::max(0.0, w - delta);
            const double hi = std::min(1.0, w + delta);
            const double diff = std::abs(sys.kernel_tail(hi, m) - sys.kernel_tail(lo, m));
            best = std::max(best, diff / (hi - lo));
        }
    }
    return best;
}

ContractionReport contraction_report(int grid_n, std::int64_t i_max) {
    const System sys = rcf_system();
    ContractionReport rep;
    rep.grid_n = grid_n;
    rep.i_max = i_max;
    rep.r_hat.push_back(contraction_r(sys, 1, grid_n, i_max));
    rep.r_hat.push_back(contraction_r(sys, 2, grid_n, i_max));
    rep.R1_hat = contraction_R1(sys, grid_n);
    return rep;
}

} // namespace rcflab::rscc
