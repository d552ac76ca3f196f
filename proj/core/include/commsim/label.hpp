#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "commsim/bitstring.hpp"

namespace commsim {

// Opaque protocol value: a query label produced by a labeling function, or
// a leaf output. Equality is the only operation protocols may apply.
// Stored as packed bit content; tuples (tensor outputs) are concatenations.
class Label {
public:
    Label() = default;

    static Label scalar(std::uint64_t v) {
        Label l;
        l.assign_scalar(v);
        return l;
    }

    static Label of_bits(const BitString& x, std::size_t lo, std::size_t hi) {
        Label l;
        l.assign_bits(x, lo, hi);
        return l;
    }

    void clear() {
        words_.clear();
        bits_ = 0;
    }

    void assign_scalar(std::uint64_t v) {
        words_.assign(1, v);
        bits_ = 64;
    }

    // Content of x[lo, hi), packed LSB-first into words.
    void assign_bits(const BitString& x, std::size_t lo, std::size_t hi);

    // Tuple concatenation (word-aligned so component boundaries are stable).
    void append(const Label& other) {
        words_.insert(words_.end(), other.words_.begin(), other.words_.end());
        bits_ += other.bits_;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::uint64_t bit_size() const { return bits_; }

    bool operator==(const Label&) const = default;

    std::string str() const;              // "<bits>:<hex words>"
    static Label parse(std::string_view);

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t bits_ = 0;
};

}  // namespace commsim
