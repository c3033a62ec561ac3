#pragma once

#include <cstdint>

namespace invwalk {

// splitmix64 (Steele/Lea/Flood): counter-based, so a (seed, stream) pair names
// an independent sequence. Monte-Carlo batches each get their own stream and
// can therefore be executed by any worker in any order without changing the
// sampled values.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed) ^ mix(~stream)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, bound) by masked rejection; bound must be >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
        for (;;) {
            std::uint64_t r = next() & mask;
            if (r < bound) return r;
        }
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

} // namespace invwalk
