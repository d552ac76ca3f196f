#pragma once

#include <cstdint>

namespace commsim {

// Public random stream shared by both simulated parties. The stream is a
// pure function of (seed, position), so any run can be replayed exactly by
// restoring those two values, and both parties always read the same bits.
//
// Words are produced by the splitmix64 output function applied at
// seed + (position+1) * GAMMA, which makes the stream seekable.
class SharedRandomness {
public:
    explicit SharedRandomness(std::uint64_t seed, std::uint64_t position = 0)
        : seed_(seed), pos_(position) {}

    // Next 64 random bits; advances the position by one word.
    std::uint64_t word() {
        std::uint64_t z = seed_ + (++pos_) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Single random bit (consumes one word).
    bool bit() { return word() & 1u; }

    // Unbiased uniform draw over [0, bound). Lemire's multiply-reject;
    // consumes a data-dependent number of words but is fully reproducible.
    std::uint32_t below(std::uint32_t bound) {
        unsigned __int128 m = (unsigned __int128)word() * bound;
        auto low = (std::uint64_t)m;
        if (low < bound) {
            std::uint64_t threshold = (0 - (std::uint64_t)bound) % bound;
            while (low < threshold) {
                m = (unsigned __int128)word() * bound;
                low = (std::uint64_t)m;
            }
        }
        return (std::uint32_t)(m >> 64);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return pos_; }
    void seek(std::uint64_t position) { pos_ = position; }

    // Derives an independent stream seed, e.g. one per Monte Carlo trial.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ull + stream * 0xD1B54A32D192ED03ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t pos_ = 0;
};

}  // namespace commsim
