#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commsim/randomness.hpp"

namespace commsim {

// Fixed-length binary word. Bit i lives at words()[i/64] bit (i%64);
// unused high bits of the last word are kept zero.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

    static BitString parse(std::string_view s);
    static BitString random(std::size_t n, SharedRandomness& rng);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool v);
    void flip(std::size_t i);

    // Substring on [lo, hi).
    BitString slice(std::size_t lo, std::size_t hi) const;

    static BitString concat(std::span<const BitString> parts);

    std::span<const std::uint64_t> words() const { return words_; }

    // Value of bits [lo, hi) read LSB-first (bit lo is the 2^0 digit).
    // Requires hi - lo <= 64.
    std::uint64_t value(std::size_t lo, std::size_t hi) const;

    std::string str() const;

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Encodes `value` as a width-bit string, LSB-first.
BitString encode_index(std::uint64_t value, std::size_t width);

}  // namespace commsim
