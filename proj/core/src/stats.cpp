#include "commsim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace commsim {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
    double n = (double)trials;
    double p = (double)successes / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half, hi = center + half;
    return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

double binomial_upper_tail(int n, double p, int threshold) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_upper_tail");
    if (threshold <= 0) return 1.0;
    if (threshold > n) return 0.0;
    // Sum P[X = i] for i >= threshold in log space for stability.
    double total = 0.0;
    double log_p = std::log(p), log_q = std::log1p(-p);
    double lgn = std::lgamma(n + 1.0);
    for (int i = threshold; i <= n; ++i) {
        double lg = lgn - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
        total += std::exp(lg + i * log_p + (n - i) * log_q);
    }
    return total > 1.0 ? 1.0 : total;
}

}  // namespace commsim
