// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RCFLAB_RNG_HPP
#define RCFLAB_RNG_HPP

#include <cstdint>
#include <string_view>

namespace rcflab {

// 64-bit finalizer from splitmix64 (Stafford mix13).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based stream: splitmix64 keyed by (seed, stream, substream).
/// Streams with distinct keys are statistically independent, so parallel
/// consumers can each own a substream and results do not depend on
/// scheduling or thread count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
        : state_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                       mix64(stream + 0xd1b54a32d192ed03ULL)) ^
                 mix64(substream + 0x8cb92ba72f3d8dd7ULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1): never returns an exact 0 or 1.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace rcflab

#endif
