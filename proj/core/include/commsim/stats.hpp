#pragma once

#include <cstdint>

namespace commsim {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Two-sided 99% z-score.
inline constexpr double kZ99 = 2.5758293035489004;

// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

// Exact binomial upper tail P[Bin(n, p) >= threshold]; reference oracle for
// boosting tests (n kept small enough for direct summation).
double binomial_upper_tail(int n, double p, int threshold);

}  // namespace commsim
