#pragma once

#include <cstdint>

namespace bannergen {

/// SplitMix64. Every seeded code path in the engine draws from this generator
/// rather than std:: distributions, so results are identical across platforms
/// and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Uniform in [lo, hi).
    double next_double(double lo, double hi) { return lo + next_double() * (hi - lo); }

    bool next_bool(double p_true) { return next_double() < p_true; }

    /// Derive an independent stream (e.g. one per batch request).
    Rng fork(std::uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL));
    }

private:
    std::uint64_t state_;
};

}  // namespace bannergen
