#include "commsim/bitstring.hpp"

#include <stdexcept>

namespace commsim {

BitString BitString::parse(std::string_view s) {
    BitString out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            out.set(i, true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("BitString::parse: expected only '0'/'1'");
        }
    }
    return out;
}

BitString BitString::random(std::size_t n, SharedRandomness& rng) {
    BitString out(n);
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = rng.word();
    if (n % 64 != 0 && !out.words_.empty()) {
        out.words_.back() &= (~0ull) >> (64 - n % 64);
    }
    return out;
}

bool BitString::get(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("BitString::get: index out of range");
    return (words_[i / 64] >> (i % 64)) & 1u;
}

void BitString::set(std::size_t i, bool v) {
    if (i >= size_) throw std::out_of_range("BitString::set: index out of range");
    std::uint64_t mask = 1ull << (i % 64);
    if (v) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

void BitString::flip(std::size_t i) {
    if (i >= size_) throw std::out_of_range("BitString::flip: index out of range");
    words_[i / 64] ^= 1ull << (i % 64);
}

BitString BitString::slice(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi > size_) throw std::out_of_range("BitString::slice: bad range");
    BitString out(hi - lo);
    std::size_t n = hi - lo;
    std::size_t srcw = lo / 64;
    unsigned shift = lo % 64;
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        std::uint64_t v = words_[srcw + w] >> shift;
        if (shift != 0 && srcw + w + 1 < words_.size()) {
            v |= words_[srcw + w + 1] << (64 - shift);
        }
        out.words_[w] = v;
    }
    if (n % 64 != 0 && !out.words_.empty()) {
        out.words_.back() &= (~0ull) >> (64 - n % 64);
    }
    return out;
}

BitString BitString::concat(std::span<const BitString> parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    BitString out(total);
    std::size_t at = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.size(); ++i) out.set(at + i, p.get(i));
        at += p.size();
    }
    return out;
}

std::uint64_t BitString::value(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi > size_) throw std::out_of_range("BitString::value: bad range");
    if (hi - lo > 64) throw std::invalid_argument("BitString::value: range wider than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t i = hi; i-- > lo;) v = (v << 1) | (std::uint64_t)get(i);
    return v;
}

std::string BitString::str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

BitString encode_index(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument("encode_index: value does not fit width");
    }
    BitString out(width);
    for (std::size_t i = 0; i < width && i < 64; ++i) out.set(i, (value >> i) & 1u);
    return out;
}

}  // namespace commsim
