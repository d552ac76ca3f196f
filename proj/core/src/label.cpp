#include "commsim/label.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace commsim {

void Label::assign_bits(const BitString& x, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi > x.size()) throw std::out_of_range("Label::assign_bits: bad range");
    std::size_t n = hi - lo;
    words_.resize((n + 63) / 64);
    auto src = x.words();
    std::size_t srcw = lo / 64;
    unsigned shift = lo % 64;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t v = src[srcw + w] >> shift;
        if (shift != 0 && srcw + w + 1 < src.size()) {
            v |= src[srcw + w + 1] << (64 - shift);
        }
        words_[w] = v;
    }
    if (n % 64 != 0 && !words_.empty()) {
        words_.back() &= (~0ull) >> (64 - n % 64);
    }
    bits_ = n;
}

std::string Label::str() const {
    std::string out = std::to_string(bits_) + ":";
    char buf[17];
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)words_[i]);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

Label Label::parse(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("Label::parse: missing ':'");
    Label l;
    auto head = s.substr(0, colon);
    auto rc = std::from_chars(head.data(), head.data() + head.size(), l.bits_);
    if (rc.ec != std::errc{}) throw std::invalid_argument("Label::parse: bad bit count");
    auto rest = s.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        auto tok = rest.substr(0, comma);
        std::uint64_t w = 0;
        auto r = std::from_chars(tok.data(), tok.data() + tok.size(), w, 16);
        if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) {
            throw std::invalid_argument("Label::parse: bad word");
        }
        l.words_.push_back(w);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (l.words_.size() != (l.bits_ + 63) / 64) {
        throw std::invalid_argument("Label::parse: word count does not match bit count");
    }
    return l;
}

}  // namespace commsim
