// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RCFLAB_RATIONAL_HPP
#define RCFLAB_RATIONAL_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rcflab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational; // always stored reduced

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a plain decimal ("0.414", ".5", "1") into an exact
/// rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

} // namespace rcflab

#endif
