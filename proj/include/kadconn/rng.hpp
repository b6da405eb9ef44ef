#pragma once

#include <cstdint>
#include <random>

namespace kadconn {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard and the range reduction below avoids std distributions, so a seed
// produces the same stream on every platform and compiler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound), unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed of pass i derived from the scenario seed; fixed so individual passes
// can be re-run in isolation.
inline std::uint64_t pass_seed(std::uint64_t scenario_seed, int pass_index) {
    return splitmix64(scenario_seed +
                      0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(pass_index + 1));
}

}  // namespace kadconn
