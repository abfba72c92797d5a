// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rcflab/rng.hpp"
#include "rcflab/transfer.hpp"

using namespace rcflab;

namespace {

GridFunction random_lipschitz(RngStream& rng, int n, double max_slope) {
    GridFunction f(n);
    f[0] = rng.next_unit() * 2.0;
    const double h = 1.0 / n;
    for (int j = 1; j <= n; ++j) {
        const double slope = (2.0 * rng.next_unit() - 1.0) * max_slope;
        f[j] = f[j - 1] + slope * h;
    }
    return f;
}

} // namespace

TEST_CASE("grid function evaluation interpolates between exact nodes") {
    const auto f = GridFunction::sample(8, [](double x) { return x * x; });
    for (int j = 0; j <= 8; ++j) CHECK(f(f.node_x(j)) == f[j]);
    const double mid = (f[3] + f[4]) / 2.0;
    CHECK(std::abs(f(3.5 / 8.0) - mid) < 1e-15);
    CHECK(f(1.0) == f[8]);
    CHECK(f(0.0) == f[0]);
    CHECK_THROWS_AS(GridFunction(0), std::invalid_argument);
}

TEST_CASE("operator maps constants to constants") {
    const GridFunction ones(256, 1.0);
    const auto out = transfer::apply_U(ones, 100);
    for (int j = 0; j <= 256; ++j) CHECK(std::abs(out[j] - 1.0) < 1e-12);
}

TEST_CASE("operator on the identity function reproduces the series value at 0") {
    const auto f = GridFunction::sample(512, [](double x) { return x; });
    const auto out = transfer::apply_U(f, 10000);
    // sum 1/(i^2 (i+1)) = pi^2/6 - 1
    CHECK(std::abs(out[0] - 0.64493406684822644) < 1e-8);
}

TEST_CASE("tail weight is exactly the missing mass") {
    const std::int64_t i_max = 1000;
    GridFunction f(128, 1.0);
    f[0] = 0.0;
    const auto out = transfer::apply_U(f, i_max);
    for (int j = 0; j <= 128; ++j) {
        const double x = f.node_x(j);
        const double tail = (x + 1.0) / (x + i_max + 1);
        // f is 1 away from 0 but interpolates inside the first cell, so the
        // deficit is the tail weight plus at most the kernel mass of the
        // digits landing in that cell, {i >= 128}.
        CHECK(1.0 - out[j] >= tail - 1e-12);
        CHECK(1.0 - out[j] <= tail + (x + 1.0) / (x + 128.0) + 1e-12);
    }
}

TEST_CASE("operator is linear and positive") {
    RngStream rng(31, fnv1a64("transfer-linear"));
    const int n = 128;
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_lipschitz(rng, n, 2.0);
        const auto g = random_lipschitz(rng, n, 2.0);
        const double a = 4.0 * rng.next_unit() - 2.0;
        const double b = 4.0 * rng.next_unit() - 2.0;
        GridFunction combo(n);
        for (int j = 0; j <= n; ++j) combo[j] = a * f[j] + b * g[j];
        const auto lhs = transfer::apply_U(combo, 500);
        const auto uf = transfer::apply_U(f, 500);
        const auto ug = transfer::apply_U(g, 500);
        for (int j = 0; j <= n; ++j) CHECK(std::abs(lhs[j] - (a * uf[j] + b * ug[j])) < 1e-12);
        const auto upos = transfer::apply_U(f, 500); // f >= 0 by construction
        for (int j = 0; j <= n; ++j) CHECK(upos[j] >= -1e-14);
    }
}

TEST_CASE("operator preserves the Gauss mean") {
    RngStream rng(37, fnv1a64("transfer-mean"));
    // the image is resampled onto the grid, so the preserved mean is exact
    // only up to the O(1/n^2) interpolation error of that resampling
    const int n = 512;
    const double budget = 10.0 / (static_cast<double>(n) * n);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_lipschitz(rng, n, 2.0);
        const auto uf = transfer::apply_U(f, 10000);
        CHECK(std::abs(transfer::u_infinity(uf) - transfer::u_infinity(f)) < budget);
    }
}

TEST_CASE("Gauss integral closed forms") {
    CHECK(std::abs(transfer::u_infinity(GridFunction(64, 3.25)) - 3.25) < 1e-13);
    const auto f = GridFunction::sample(4096, [](double x) { return x + 1.0; });
    CHECK(std::abs(transfer::u_infinity(f) - 1.0 / std::numbers::ln2) < 1e-12);

    const GridFunction ones(64, 1.0);
    CHECK(std::abs(transfer::integral_inv1p(ones, 0.0, 1.0) - std::numbers::ln2) < 1e-14);
    CHECK(std::abs(transfer::integral_inv1p(ones, 0.2, 0.7) - std::log(1.7 / 1.2)) < 1e-14);
    CHECK_THROWS_AS(transfer::integral_inv1p(ones, 0.7, 0.2), std::domain_error);
}

TEST_CASE("iteration of a constant stops immediately at zero error") {
    const auto table = transfer::iterate_U(GridFunction(128, 1.0), 10, 100);
    REQUIRE(table.size() == 1);
    CHECK(table[0].sup_error < 1e-13);
    CHECK(std::isnan(table[0].ratio));
}

TEST_CASE("iteration error decays monotonically until the floor") {
    const auto f0 = GridFunction::sample(512, [](double x) { return x + 1.0; });
    const auto table = transfer::iterate_U(f0, 12, 1000);
    for (std::size_t k = 1; k < table.size(); ++k) {
        if (table[k].sup_error > 1e-8) CHECK(table[k].sup_error < table[k - 1].sup_error);
    }
}

TEST_CASE("distribution function validation") {
    CHECK_THROWS_AS(transfer::DistributionFunction::sample(64, [](double x) { return x + 0.1; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(transfer::DistributionFunction::sample(
                        64, [](double x) { return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x; }),
                    std::invalid_argument);
    const auto ok = transfer::DistributionFunction::sample(64, [](double x) { return x; });
    CHECK(ok.grid()[0] == 0.0);
    CHECK(ok.grid()[64] == 1.0);
}

TEST_CASE("one distribution step from the uniform start") {
    const auto F0 = transfer::DistributionFunction::sample(1024, [](double x) { return x; });
    double clamp = -1.0;
    const auto F1 = transfer::gk_step(F0, 10000, &clamp);
    CHECK(clamp >= 0.0);
    CHECK(clamp < 1e-6);
    CHECK(F1.grid()[1024] == 1.0);
    // F1(1/2) = sum 1/(i(2i+1)) = 2 - 2 log 2
    CHECK(std::abs(F1.grid()(0.5) - (2.0 - 2.0 * std::numbers::ln2)) < 1e-8);
}

TEST_CASE("the Gauss CDF is a fixed point up to the grid floor") {
    const auto F = transfer::DistributionFunction::sample(
        4096, [](double x) { return std::log1p(x) / std::numbers::ln2; });
    const auto F1 = transfer::gk_step(F, 10000);
    CHECK(F1.grid().sup_distance(F.grid()) < 5e-7);
}

TEST_CASE("distribution iteration converges to the Gauss CDF") {
    const auto F0 = transfer::DistributionFunction::sample(512, [](double x) { return x; });
    const auto table = transfer::gk_iterate(F0, 10, 2000);
    REQUIRE(table.size() == 10);
    for (std::size_t k = 1; k < table.size(); ++k) {
        if (table[k].sup_error > 1e-5) CHECK(table[k].sup_error < table[k - 1].sup_error);
    }
    CHECK(table.back().sup_error < 1e-4);
}

TEST_CASE("density conjugation round trip and one step at zero") {
    const GridFunction flat(256, 1.0);
    const auto f = transfer::density_to_f(flat);
    CHECK(f[0] == 1.0);
    CHECK(f[256] == 2.0);
    const auto back = transfer::f_to_density(f);
    for (int j = 0; j <= 256; ++j) CHECK(std::abs(back[j] - 1.0) < 1e-15);

    // One density step applied to the flat density, read at x = 0:
    // sum P_i(0) (1/i + 1) = sum 1/i^2 = pi^2/6, with the truncation nearly
    // cancelled by the tail correction.
    const auto stepped = transfer::f_to_density(transfer::apply_U(f, 10000));
    CHECK(std::abs(stepped[0] - std::numbers::pi * std::numbers::pi / 6.0) < 1e-7);
}

TEST_CASE("distribution step agrees with the conjugated density step") {
    const int n = 512;
    const auto F = transfer::DistributionFunction::sample(
        n, [](double x) { return std::log1p(x) / std::numbers::ln2; });
    const auto Fprime = GridFunction::sample(
        n, [](double x) { return 1.0 / ((1.0 + x) * std::numbers::ln2); });
    const auto F1 = transfer::gk_step(F, 2000);
    const auto d1 = transfer::f_to_density(transfer::apply_U(transfer::density_to_f(Fprime), 2000));
    const double h = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        const double slope = (F1.grid()[j + 1] - F1.grid()[j]) / h;
        const double mid = 0.5 * (d1[j] + d1[j + 1]);
        CHECK(std::abs(slope - mid) < 5.0 / n);
    }
}

TEST_CASE("rate estimate sits inside (0,1) and fails loudly on short runs") {
    const double q = transfer::spectral_gap_estimate(1024, 2000, 25);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    CHECK(std::abs(q - 0.3037) < 0.02);
    CHECK_THROWS_AS(transfer::spectral_gap_estimate(1024, 2000, 5),
                    transfer::GridResolutionError);
    CHECK_THROWS_AS(transfer::spectral_gap_estimate(512, 2000, 25), std::invalid_argument);
}
