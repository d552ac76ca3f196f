#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "commsim/bitstring.hpp"
#include "commsim/cost.hpp"
#include "commsim/label.hpp"
#include "commsim/randomness.hpp"

namespace commsim {

struct Verdict {
    bool accepted = false;
    std::uint64_t bits_used = 0;
};

// Constants of the randomized building blocks. Costs depend only on these,
// never on inputs or randomness.
struct SubprotocolConfig {
    int hash_bits = 2;            // t: inner-product bits per equality check
    int hd1_buckets = 16;         // b: bucket count of the distance-1 sketch
    int hd1_trials = 0;           // 0 = derive from the target error
    int smallhd_bucket_factor = 8;

    void validate() const;
};

// --- exact reference computations (oracle mode) ---

std::size_t exact_hamming(const BitString& x, const BitString& y);
bool exact_eq(const BitString& x, const BitString& y);

// --- equality ---

// Randomized equality of two word sequences of equal length: one party
// sends t shared-hash inner-product bits, the other replies one verdict
// bit. One-sided: equal inputs are always accepted; unequal inputs are
// accepted with probability exactly 2^-t.
Verdict eq_words(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                 const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter);

// Equality of two bit strings (length-prefixed encoding, so strings of
// different lengths are never confused).
Verdict eq_once(const BitString& x, const BitString& y, const SubprotocolConfig& cfg,
                SharedRandomness& rng, CostMeter& meter);

// Equality of two scalar labels.
Verdict eq_once(std::uint64_t x, std::uint64_t y, const SubprotocolConfig& cfg,
                SharedRandomness& rng, CostMeter& meter);

// Conjunction of coordinate equalities via a single equality check on the
// concatenation. Same cost as eq_once regardless of sequence length.
Verdict eq_batch(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                 const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter);

// One-sided repetition: reps hash rounds, one verdict bit, accept iff every
// round collides. Cost hash_bits*reps + 1.
Verdict eq_repeated(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                    int reps, const SubprotocolConfig& cfg, SharedRandomness& rng,
                    CostMeter& meter);

// Repetitions needed to push one-sided equality error below eps.
int eq_repetitions_for(double eps);

// --- generic two-sided boosting ---

using RandomizedPredicate = std::function<bool(SharedRandomness&, CostMeter&)>;

// ceil(18 ln(1/delta)) majority repetitions; Chernoff-safe for base error 1/4.
int majority_repetitions(double delta);

// Majority vote over independent repetitions of a two-sided-error predicate.
RandomizedPredicate boost_majority(RandomizedPredicate base, double delta);

// --- 1-Hamming-Distance sketch ---

// One trial of the bucket-parity sketch: shared randomness assigns every
// position to one of `buckets` buckets; one party sends its bucket
// parities, the other replies a verdict bit. Accepts iff exactly one
// bucket parity differs. dist 1 is always accepted; even dist never is.
Verdict hd1_once(const BitString& x, const BitString& y, int buckets, SharedRandomness& rng,
                 CostMeter& meter);

// Conjunction of independent hd1_once trials, sized so that the soundness
// error is at most delta. Completeness stays one-sided.
Verdict hd1(const BitString& x, const BitString& y, double delta, const SubprotocolConfig& cfg,
            SharedRandomness& rng, CostMeter& meter);

// k copies of hd1 at per-copy error delta/k (union bound).
std::vector<bool> hd1_tensor(std::span<const BitString> xs, std::span<const BitString> ys,
                             double delta, const SubprotocolConfig& cfg, SharedRandomness& rng,
                             CostMeter& meter);

// k copies of equality at per-copy error delta/k: each copy widens the
// hash to ceil(log2(k/delta)) inner-product bits (one-sided), so k=1 at
// delta=1/4 is exactly eq_once.
std::vector<bool> eq_tensor(std::span<const BitString> xs, std::span<const BitString> ys,
                            double delta, const SubprotocolConfig& cfg, SharedRandomness& rng,
                            CostMeter& meter);

// Alternative strategy: one boosted walk over the depth-k tensor of
// single-equality trees, costing O(k + log(1/delta)) bits in total.
std::vector<bool> eq_tensor_noisy(std::span<const BitString> xs, std::span<const BitString> ys,
                                  double delta, SharedRandomness& rng, CostMeter& meter);

// Decides dist(x, y) <= ell for constant ell: all bucket parities are
// exchanged, the measured distance is the number of differing parities,
// and the maximum over the repeated trials is compared against ell.
// Measured distance never exceeds the true distance, so acceptance is
// one-sided.
bool hd_small(const BitString& x, const BitString& y, int ell, double delta,
              const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter);

int hd_small_buckets(int ell, const SubprotocolConfig& cfg);

// --- shipped probability bound tables ---

// P[#odd-count buckets == 1] after `balls` uniform throws into `buckets`.
// Exact: the odd-bucket count is a Markov chain (balls are exchangeable).
double exactly_one_odd_probability(int balls, int buckets);

// P[#odd-count buckets <= limit].
double odd_buckets_at_most_probability(int limit, int balls, int buckets);

// Worst-case single-trial false-accept of hd1_once: exact values for odd
// distances up to 9 plus the analytic tail bound b * 2^(1-b) beyond.
double hd1_false_accept_bound(int buckets);

// Worst-case single-trial false-accept of one hd_small trial at threshold
// ell: max over true distances of P[measured <= ell].
double hd_small_false_accept_bound(int ell, int buckets);

int hd1_trials_for(double delta, const SubprotocolConfig& cfg);
int hd_small_trials_for(double delta, int ell, const SubprotocolConfig& cfg);

}  // namespace commsim
