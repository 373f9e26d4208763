#pragma once

#include <cstdint>

namespace lcsft {

// Counter-based pseudo-random stream. Each (seed, stream) pair yields an
// independent, reproducible sequence regardless of scheduling, which keeps
// batched sampling bit-exact under any worker count.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        state = mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    }

    static constexpr uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound).
    uint64_t next_below(uint64_t bound) {
        // Rejection-free modulo is fine here: bound is tiny (<= 63).
        return next() % bound;
    }
};

}  // namespace lcsft
