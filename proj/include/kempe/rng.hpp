#pragma once

#include <cstdint>
#include <random>

namespace kempe {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seedable generator with platform-independent output.
//
// The engine is std::mt19937_64, whose sequence the standard fixes. Bounded
// draws use rejection sampling on raw 64-bit outputs, and a coin is the top
// bit of one output, so no implementation-defined distribution is involved.
// Rng(seed, k) and Rng(seed).split(k) give the same independent stream k.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), eng_(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1))) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return x % n;
    }

    bool coin() { return (eng_() >> 63) != 0; }

    Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace kempe
