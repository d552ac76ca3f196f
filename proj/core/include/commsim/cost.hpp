#pragma once

#include <cstdint>

namespace commsim {

// Counts simulated transmitted bits within one protocol run. Monotone:
// every exchanged bit is charged, including the verdict bits a party sends
// so that both sides agree on a subprotocol's outcome.
class CostMeter {
public:
    void charge(std::uint64_t n) { bits_ += n; }
    std::uint64_t bits() const { return bits_; }
    void reset() { bits_ = 0; }

private:
    std::uint64_t bits_ = 0;
};

}  // namespace commsim
