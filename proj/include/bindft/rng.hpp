#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bindft {

// Seed scrambler; also used to derive independent stream keys from
// (seed, index) pairs so that parallel workers reproduce identical draws.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

// Unbiased integer in [0, bound). Rejection on the biased tail; the mt19937_64
// output sequence is pinned by the standard, so draws are platform independent
// (std::uniform_int_distribution is not).
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t x = eng();
        if (x < limit) return x % bound;
    }
}

/// Uniform double in the open interval (0, 1).
inline double uniform_open01(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1p-53;
}

/// Standard normal via Box-Muller; two uniforms per call, no cached spare.
inline double standard_normal(std::mt19937_64& eng) {
    const double u = uniform_open01(eng);
    const double v = uniform_open01(eng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
}

} // namespace bindft
