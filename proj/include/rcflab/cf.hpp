// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RCFLAB_CF_HPP
#define RCFLAB_CF_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rcflab/rational.hpp"

namespace rcflab::cf {

/// Digits a1..an of a regular continued fraction. `terminated` is true iff
/// the expansion ended exactly (the iterate hit 0), which happens precisely
/// for rational inputs. `reliable` is false when the float extraction path
/// was pushed past its trusted depth.
struct DigitSequence {
    std::vector<std::int64_t> digits;
    bool terminated = false;
    bool reliable = true;
};

/// Depth up to which binary64 digit extraction is trusted; the error of the
/// shift map roughly doubles per step, so ~30 digits exhaust the mantissa.
inline constexpr int kFloatDigitTrust = 30;

/// The shift map x -> 1/x - floor(1/x) on [0,1], with 0 -> 0 (and 1 -> 0).
double gauss_map(double x);

/// First digit and remainder of the expansion, with a one-step guard against
/// floor misrounding at representable boundaries. Requires 0 < x <= 1.
struct DigitStep {
    std::int64_t digit;
    double remainder;
};
DigitStep digit_step(double x);

/// Digit extraction, binary64 path. Emits at most min(n_max, trust_cap)
/// digits; asking past the cap clears `reliable`.
DigitSequence rcf_digits(double x, int n_max, int trust_cap = kFloatDigitTrust);

/// Digit extraction, exact path. Always terminates (rationals have finite
/// expansions) as long as n_max allows. Requires 0 <= x <= 1.
DigitSequence rcf_digits(const Rational& x, int n_max);

/// Value of the finite continued fraction 1/(a1 + 1/(a2 + ...)), exact and
/// reduced. Throws std::invalid_argument on an empty list or a digit < 1.
Rational evaluate_finite(std::span<const std::int64_t> digits);

/// Numerators and denominators p_k/q_k of the truncations, k = 1..n,
/// computed by the two-term recurrence with unbounded integers.
struct Convergents {
    std::vector<BigInt> p;
    std::vector<BigInt> q;
};
Convergents convergents(std::span<const std::int64_t> digits);

/// The reversed-prefix values s_k = [a_k, ..., a_1], via the forward
/// recursion s_0 = 0, s_k = 1/(a_k + s_{k-1}). Exact.
std::vector<Rational> backward_chain(std::span<const std::int64_t> digits);

} // namespace rcflab::cf

#endif
