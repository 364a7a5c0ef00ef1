#pragma once

#include <cstdint>

namespace padicdyn {

/// Deterministic 64-bit generator (splitmix64). Hand-rolled so that streams
/// are reproducible across platforms and standard library versions; report
/// bytes must not depend on the toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) via rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~0ULL) / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    /// Independent child stream; forking the same (parent seed, index) pair
    /// always yields the same stream, which is what makes parallel sweeps
    /// order-independent.
    Rng fork(std::uint64_t index) const {
        Rng mix(state_ ^ (0xd1b54a32d192ed03ULL * (index + 1)));
        return Rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

} // namespace padicdyn
