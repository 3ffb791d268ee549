#pragma once

#include <cstdint>
#include <random>

namespace aqs {

// Deterministic randomness source. One instance per session/trial; every
// stochastic choice in a run is drawn from it, so a (config, seed) pair
// replays bit-for-bit. Doubles are derived from raw mt19937_64 words
// instead of std::uniform_real_distribution, whose output is not pinned
// by the standard.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t word() { return gen_(); }

    int bit() { return static_cast<int>(gen_() & 1u); }

    // Uniform in [0, 1) with 53 bits of precision.
    double canonical() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(canonical() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace aqs
