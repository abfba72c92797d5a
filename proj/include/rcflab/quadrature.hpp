// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>

namespace rcflab::quad {

// 16-point Gauss-Legendre rule on [-1,1]; nodes found by Newton iteration on
// the Legendre recurrence, accurate to machine precision.
struct GaussLegendre16 {
    std::array<double, 16> nodes{};
    std::array<double, 16> weights{};

    GaussLegendre16() {
        constexpr int n = 16;
        for (int k = 0; k < (n + 1) / 2; ++k) {
            double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            weights[k] = weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre16& gl16() {
    static const GaussLegendre16 rule;
    return rule;
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gl16();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int k = 0; k < 16; ++k) sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return half * sum;
}

// One panel per consecutive pair of breakpoints.
inline double integrate_pieces(const std::function<double(double)>& f,
                               std::span<const double> breaks) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        if (breaks[k + 1] > breaks[k]) sum += integrate(f, breaks[k], breaks[k + 1]);
    return sum;
}

} // namespace rcflab::quad
