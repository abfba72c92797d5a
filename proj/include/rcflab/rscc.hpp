// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RCFLAB_RSCC_HPP
#define RCFLAB_RSCC_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rcflab::rscc {

// The continued-fraction instance on W = [0,1], alphabet N+.

/// Point map u(w,i) = 1/(w+i), always in (0,1].
inline double u_map(double w, std::int64_t i) {
    return 1.0 / (w + static_cast<double>(i));
}

/// Digit emission kernel P(w,i) = (w+1)/((w+i)(w+i+1)).
inline double p_kernel(double w, std::int64_t i) {
    const double wi = w + static_cast<double>(i);
    return (w + 1.0) / (wi * (wi + 1.0));
}

/// Telescoped tail mass P(w, {i >= m}) = (w+1)/(w+m). Exactly 1 at m = 1.
inline double p_kernel_tail(double w, std::int64_t m) {
    return (w + 1.0) / (w + static_cast<double>(m));
}

/// A state space [0,1] with a pluggable map/kernel pair; the continued
/// fraction system above is the only instance shipped.
struct System {
    std::function<double(double, std::int64_t)> point_map;
    std::function<double(double, std::int64_t)> kernel;
    std::function<double(double, std::int64_t)> kernel_tail; // mass of {i >= m}
};

System rcf_system();

/// Left fold of the point map over a digit word.
double iterate_u(double w, std::span<const std::int64_t> word);

/// Probability of emitting exactly `word` from state w: the chained product
/// of kernel values along the trajectory. Empty word has probability 1.
double word_probability(double w, std::span<const std::int64_t> word);

/// Smallest digit i with u(w,i) < ubound (strict).
std::int64_t q_threshold_digit(double w, double ubound);

/// One-step state-chain kernel mass Q(w, [0, ubound)), by the closed tail
/// form. ubound must lie in (0, 1].
double q_kernel_interval(double w, double ubound);

/// Inverse-CDF digit draw from P(w, .) given a uniform u in (0,1).
std::int64_t sample_digit(double w, double u);

/// Realized sample path: zeta[0] = w0, xi[k] drawn from P(zeta[k], .),
/// zeta[k+1] = u(zeta[k], xi[k]). Same (seed, stream) => same trajectory.
struct ChainTrajectory {
    std::uint64_t seed = 0;
    double w0 = 0.0;
    std::vector<std::int64_t> xi; // size n
    std::vector<double> zeta;     // size n + 1
};
ChainTrajectory simulate_chain(const System& sys, double w0, int n, std::uint64_t seed,
                               std::uint64_t stream = 0);

/// Numerical estimate of the word-averaged contraction coefficient r_k
/// (grid pair supremum plus diagonal derivative form). Only k = 1 and k = 2
/// are supported; the word sum grows as i_max^k.
double contraction_r(const System& sys, int k, int grid_n, std::int64_t i_max);

/// Numerical estimate of the kernel Lipschitz modulus R1 over threshold
/// sets {i >= m}. Threshold sets suffice: the digit sets on which the
/// kernel derivative keeps one sign are always of that form.
double contraction_R1(const System& sys, int grid_n, std::int64_t max_threshold = 64);

struct ContractionReport {
    int grid_n = 0;
    std::vector<double> r_hat; // r_hat[k-1] estimates r_k
    double R1_hat = 0.0;
    std::int64_t i_max = 0;
};
ContractionReport contraction_report(int grid_n, std::int64_t i_max);

} // namespace rcflab::rscc

#endif
