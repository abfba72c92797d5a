// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/cf.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcflab {

Rational parse_rational(std::string_view text) {
    auto bad = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string num(text.substr(0, slash));
        std::string den(text.substr(slash + 1));
        if (num.empty() || den.empty()) bad();
        try {
            BigInt p(num), q(den);
            if (q == 0) bad();
            return Rational(p, q);
        } catch (const std::runtime_error&) {
            bad();
        }
    }

    // Decimal form: [sign] digits [. digits]
    std::string_view s = text;
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string int_part, frac_part;
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        int_part = std::string(s);
    } else {
        int_part = std::string(s.substr(0, dot));
        frac_part = std::string(s.substr(dot + 1));
    }
    if (int_part.empty() && frac_part.empty()) bad();
    for (char c : int_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    for (char c : frac_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();

    BigInt num = int_part.empty() ? BigInt(0) : BigInt(int_part);
    BigInt den = 1;
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rational r(num, den);
    return negative ? -r : r;
}

} // namespace rcflab

namespace rcflab::cf {

DigitStep digit_step(double x) {
    const double inv = 1.0 / x;
    double m = std::floor(inv);
    // Guard against floor landing one off when 1/x rounds across an integer.
    if (inv - m < 0.0) m -= 1.0;
    if (m < 1.0) m = 1.0;
    double rem = inv - m;
    if (rem >= 1.0) {
        m += 1.0;
        rem = inv - m;
    }
    if (rem < 0.0) rem = 0.0;
    return {static_cast<std::int64_t>(m), rem};
}

double gauss_map(double x) {
    if (x == 0.0) return 0.0;
    const double inv = 1.0 / x;
    double rem = inv - std::floor(inv);
    if (rem < 0.0) rem += 1.0; // floor overshoot
    if (rem >= 1.0) rem -= 1.0;
    return rem;
}

DigitSequence rcf_digits(double x, int n_max, int trust_cap) {
    DigitSequence out;
    if (x < 0.0 || x > 1.0) throw std::domain_error("rcf_digits: x outside [0,1]");
    if (n_max > trust_cap) {
        out.reliable = false;
        n_max = trust_cap;
    }
    if (x == 0.0) {
        out.terminated = true;
        return out;
    }
    for (int k = 0; k < n_max; ++k) {
        if (x == 0.0) {
            out.terminated = true;
            return out;
        }
        if (x < 0x1.0p-62) {
            // 1/x no longer fits the digit type; the remainder carries no
            // fractional precision at this scale either.
            out.reliable = false;
            return out;
        }
        auto [digit, rem] = digit_step(x);
        out.digits.push_back(digit);
        x = rem;
    }
    if (x == 0.0) out.terminated = true;
    return out;
}

DigitSequence rcf_digits(const Rational& x, int n_max) {
    if (x < 0 || x > 1) throw std::domain_error("rcf_digits: x outside [0,1]");
    DigitSequence out;
    if (x == 0) {
        out.terminated = true;
        return out;
    }
    BigInt p = numerator(x), q = denominator(x);
    for (int k = 0; k < n_max; ++k) {
        // x = p/q in (0,1]; digit = floor(q/p), remainder = (q mod p)/p.
        BigInt digit = q / p;
        BigInt rem = q % p;
        if (digit > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("rcf_digits: digit exceeds 64 bits");
        out.digits.push_back(digit.convert_to<std::int64_t>());
        if (rem == 0) {
            out.terminated = true;
            return out;
        }
        q = p;
        p = rem;
    }
    return out;
}

Rational evaluate_finite(std::span<const std::int64_t> digits) {
    if (digits.empty()) throw std::invalid_argument("evaluate_finite: empty digit list");
    Rational value = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it < 1) throw std::invalid_argument("evaluate_finite: digit < 1");
        value = Rational(1) / (Rational(*it) + value);
    }
    return value;
}

Convergents convergents(std::span<const std::int64_t> digits) {
    if (digits.empty()) throw std::invalid_argument("convergents: empty digit list");
    Convergents out;
    out.p.reserve(digits.size());
    out.q.reserve(digits.size());
    BigInt p_prev = 1, p_cur = 0; // p_{-1}, p_0
    BigInt q_prev = 0, q_cur = 1; // q_{-1}, q_0
    for (std::int64_t a : digits) {
        if (a < 1) throw std::invalid_argument("convergents: digit < 1");
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        out.p.push_back(p_cur);
        out.q.push_back(q_cur);
    }
    return out;
}

std::vector<Rational> backward_chain(std::span<const std::int64_t> digits) {
    if (digits.empty()) throw std::invalid_argument("backward_chain: empty digit list");
    std::vector<Rational> s;
    s.reserve(digits.size());
    Rational cur = 0;
    for (std::int64_t a : digits) {
        if (a < 1) throw std::invalid_argument("backward_chain: digit < 1");
        cur = Rational(1) / (Rational(a) + cur);
        s.push_back(cur);
    }
    return s;
}

} // namespace rcflab::cf
