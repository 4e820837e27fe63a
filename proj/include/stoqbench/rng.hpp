#pragma once

#include <cstdint>
#include <random>

namespace stoq {

/// All randomness flows through mt19937_64 (its output sequence is pinned by
/// the standard) plus the helpers below, so runs are reproducible across
/// compilers and platforms. std::*_distribution is avoided on purpose: its
/// algorithms are implementation-defined.
using Rng = std::mt19937_64;

/// splitmix64 mix; the documented seed-splitting function for deriving
/// per-trial streams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream: mixes the master seed with a stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Bernoulli(n, 1/2) sample via n coin flips (n is small here); avoids the
/// implementation-defined std::binomial_distribution.
inline int binomial_half(Rng& rng, int n) {
    int count = 0;
    int remaining = n;
    while (remaining >= 64) {
        count += __builtin_popcountll(rng());
        remaining -= 64;
    }
    if (remaining > 0) {
        const std::uint64_t bits = rng() >> (64 - remaining);
        count += __builtin_popcountll(bits);
    }
    return count;
}

}  // namespace stoq
