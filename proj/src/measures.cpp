// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcflab/cf.hpp"
#include "rcflab/quadrature.hpp"
#include "rcflab/rscc.hpp"
#include "rcflab/transfer.hpp"

namespace rcflab::measures {

namespace {
constexpr std::int64_t kChunk = 65536;
} // namespace

double gauss_measure_interval(double a, double b) {
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::domain_error("gauss_measure_interval: need 0 <= a <= b <= 1");
    return std::log1p((b - a) / (1.0 + a)) / std::numbers::ln2;
}

QuadratureResult check_gamma_invariance(double ubound, double quad_tol) {
    if (!(ubound > 0.0) || ubound > 1.0)
        throw std::domain_error("check_gamma_invariance: ubound outside (0,1]");
    if (!(quad_tol > 0.0))
        throw std::domain_error("check_gamma_invariance: quad_tol must be positive");

    // The threshold digit of [0,ubound) jumps where 1/ubound - x crosses an
    // integer: at most one such point inside (0,1).
    std::vector<double> breaks{0.0};
    const double split = 1.0 / ubound - std::floor(1.0 / ubound);
    if (split > 0.0 && split < 1.0) breaks.push_back(split);
    breaks.push_back(1.0);

    const auto integrand = [ubound](double x) {
        return rscc::q_kernel_interval(x, ubound) / ((x + 1.0) * std::numbers::ln2);
    };
    QuadratureResult res;
    res.value = quad::integrate_pieces(integrand, breaks);
    res.est_error = std::abs(res.value - gauss_measure_interval(0.0, ubound));
    res.pieces = static_cast<int>(breaks.size()) - 1;
    return res;
}

double ks_statistic(std::vector<double> samples, double (*cdf)(double)) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double f = cdf(samples[k]);
        d = std::max(d, std::max(f - k / n, (k + 1) / n - f));
    }
    return d;
}

double ks_critical(double alpha, std::int64_t nsamples) {
    if (nsamples < 1) throw std::invalid_argument("ks_critical: need at least one sample");
    const double root = std::sqrt(static_cast<double>(nsamples));
    if (std::abs(alpha - 0.05) < 1e-12) return 1.358 / root;
    if (std::abs(alpha - 0.01) < 1e-12) return 1.628 / root;
    throw std::invalid_argument("ks_critical: only alpha = 0.05 and 0.01 are tabulated");
}

double check_tau_invariance(std::int64_t nsamples, std::uint64_t seed) {
    if (nsamples < 10000)
        throw std::invalid_argument("check_tau_invariance: need at least 1e4 samples");
    std::vector<double> pushed(nsamples);
    const std::int64_t nchunks = (nsamples + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        RngStream rng(seed, fnv1a64("tau-invariance"), static_cast<std::uint64_t>(c));
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk, nsamples);
        for (std::int64_t k = lo; k < hi; ++k) pushed[k] = cf::gauss_map(sample_gauss(rng));
    }
    return ks_statistic(std::move(pushed), &gauss_cdf);
}

double tau_pushforward_cdf(double y, std::int64_t i_max) {
    if (!(0.0 <= y && y <= 1.0))
        throw std::domain_error("tau_pushforward_cdf: y outside [0,1]");
    if (i_max < 10) throw std::invalid_argument("tau_pushforward_cdf: i_max must be >= 10");
    // Branch i contributes gamma((1/(y+i), 1/i]); the i > i_max remainder
    // telescopes to log(1 + y/(i_max+1)).
    double sum = 0.0;
    for (std::int64_t i = i_max; i >= 1; --i)
        sum += std::log1p(1.0 / static_cast<double>(i)) - std::log1p(1.0 / (y + i));
    sum += std::log1p(y / (i_max + 1));
    return sum / std::numbers::ln2;
}

DensitySampler::DensitySampler(const GridFunction& density) : density_(density) {
    const int n = density_.size();
    for (int j = 0; j <= n; ++j) {
        if (density_[j] < -1e-12)
            throw std::domain_error("DensitySampler: density must be nonnegative");
        if (density_[j] < 0.0) density_[j] = 0.0;
    }
    const double h = 1.0 / n;
    cdf_.assign(n + 1, 0.0);
    for (int j = 0; j < n; ++j)
        cdf_[j + 1] = cdf_[j] + 0.5 * h * (density_[j] + density_[j + 1]);
    const double mass = cdf_[n];
    if (std::abs(mass - 1.0) > 1e-8)
        throw std::domain_error("DensitySampler: density mass is not 1");
    for (int j = 0; j <= n; ++j) {
        cdf_[j] /= mass;
        density_[j] /= mass;
    }
    cdf_[n] = 1.0;
}

double DensitySampler::operator()(double u) const {
    const int n = density_.size();
    const double h = 1.0 / n;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    int k = static_cast<int>(it - cdf_.begin()) - 1;
    if (k < 0) k = 0;
    if (k > n - 1) k = n - 1;
    const double s = u - cdf_[k];
    const double va = density_[k];
    const double slope = (density_[k + 1] - va) / h;
    // (slope/2) t^2 + va t = s; the discriminant is (va + slope*t)^2 at the
    // cell boundary, so the subtraction-free root below is always defined.
    const double disc = std::sqrt(std::max(0.0, va * va + 2.0 * slope * s));
    const double denom = va + disc;
    double t = denom > 0.0 ? 2.0 * s / denom : 0.0;
    if (t < 0.0) t = 0.0;
    if (t > h) t = h;
    return density_.node_x(k) + t;
}

PushforwardPair check_pushforward_identity(const GridFunction& density, int n, double x,
                                           std::int64_t nsamples, std::uint64_t seed,
                                           std::int64_t i_max) {
    if (n < 0 || n > 5)
        throw std::invalid_argument("check_pushforward_identity: n must be in [0,5]");
    if (!(0.0 <= x && x <= 1.0))
        throw std::domain_error("check_pushforward_identity: x outside [0,1]");
    if (nsamples < 1) throw std::invalid_argument("check_pushforward_identity: nsamples < 1");

    const DensitySampler sampler(density);
    const std::int64_t nchunks = (nsamples + kChunk - 1) / kChunk;
    std::vector<std::int64_t> hits(nchunks, 0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        RngStream rng(seed, fnv1a64("pushforward"), static_cast<std::uint64_t>(c));
        const std::int64_t count = std::min(kChunk, nsamples - c * kChunk);
        std::int64_t local = 0;
        for (std::int64_t k = 0; k < count; ++k) {
            double w = sampler(rng.next_unit_open());
            for (int step = 0; step < n; ++step) w = cf::gauss_map(w);
            if (w < x) ++local;
        }
        hits[c] = local;
    }
    std::int64_t total = 0;
    for (std::int64_t c : hits) total += c;

    GridFunction f = transfer::density_to_f(density);
    for (int step = 0; step < n; ++step) f = transfer::apply_U(f, i_max);

    PushforwardPair pair;
    pair.monte_carlo = static_cast<double>(total) / static_cast<double>(nsamples);
    pair.quadrature = transfer::integral_inv1p(f, 0.0, x);
    return pair;
}

} // namespace rcflab::measures
