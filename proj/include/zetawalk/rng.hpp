#pragma once

#include <cstdint>

namespace zetawalk {

// SplitMix64: tiny, fast, and splittable by construction.  Stream w for a
// master seed is seeded with scramble(scramble(seed) + w), so any walk's stream
// can be opened independently of all others (order- and thread-agnostic).
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t scramble(std::uint64_t z) noexcept {
        z += 0x9E3779B97f4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static splitmix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
        return splitmix64(scramble(scramble(seed) + index));
    }

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97f4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace zetawalk
