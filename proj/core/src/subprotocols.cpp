#include "commsim/subprotocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "commsim/noisy_tree.hpp"

namespace commsim {

void SubprotocolConfig::validate() const {
    if (hash_bits < 1) throw std::invalid_argument("SubprotocolConfig: hash_bits >= 1 required");
    if (hd1_buckets < 4) throw std::invalid_argument("SubprotocolConfig: hd1_buckets >= 4 required");
    if (hd1_trials < 0) throw std::invalid_argument("SubprotocolConfig: hd1_trials >= 0 required");
    if (smallhd_bucket_factor < 1) {
        throw std::invalid_argument("SubprotocolConfig: smallhd_bucket_factor >= 1 required");
    }
}

std::size_t exact_hamming(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("exact_hamming: length mismatch");
    std::size_t d = 0;
    auto xw = x.words(), yw = y.words();
    for (std::size_t i = 0; i < xw.size(); ++i) d += std::popcount(xw[i] ^ yw[i]);
    return d;
}

bool exact_eq(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("exact_eq: length mismatch");
    return x == y;
}

namespace {

// t inner-product hash bits over GF(2): for every word position one fresh
// 64-bit mask per hash bit, shared by both parties. Equal sequences always
// collide; sequences differing anywhere collide with probability exactly
// 2^-t.
bool eq_hash_collides(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                      int t, SharedRandomness& rng) {
    if (xs.size() != ys.size()) throw std::invalid_argument("equality hash: length mismatch");
    bool collide = true;
    for (int h = 0; h < t; ++h) {
        std::uint64_t accx = 0, accy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::uint64_t m = rng.word();
            accx ^= m & xs[i];
            accy ^= m & ys[i];
        }
        collide &= (std::popcount(accx) & 1) == (std::popcount(accy) & 1);
    }
    return collide;
}

std::vector<std::uint64_t> length_prefixed(const BitString& x) {
    std::vector<std::uint64_t> enc;
    enc.reserve(1 + x.words().size());
    enc.push_back(x.size());
    enc.insert(enc.end(), x.words().begin(), x.words().end());
    return enc;
}

}  // namespace

Verdict eq_words(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                 const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter) {
    cfg.validate();
    std::uint64_t bits = (std::uint64_t)cfg.hash_bits + 1;  // hash exchange + verdict
    meter.charge(bits);
    return {eq_hash_collides(xs, ys, cfg.hash_bits, rng), bits};
}

Verdict eq_once(const BitString& x, const BitString& y, const SubprotocolConfig& cfg,
                SharedRandomness& rng, CostMeter& meter) {
    auto ex = length_prefixed(x), ey = length_prefixed(y);
    ex.resize(std::max(ex.size(), ey.size()), 0);
    ey.resize(std::max(ex.size(), ey.size()), 0);
    return eq_words(ex, ey, cfg, rng, meter);
}

Verdict eq_once(std::uint64_t x, std::uint64_t y, const SubprotocolConfig& cfg,
                SharedRandomness& rng, CostMeter& meter) {
    return eq_words(std::span(&x, 1), std::span(&y, 1), cfg, rng, meter);
}

Verdict eq_batch(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                 const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter) {
    if (xs.size() != ys.size()) throw std::invalid_argument("eq_batch: length mismatch");
    return eq_words(xs, ys, cfg, rng, meter);
}

Verdict eq_repeated(std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys,
                    int reps, const SubprotocolConfig& cfg, SharedRandomness& rng,
                    CostMeter& meter) {
    cfg.validate();
    if (reps < 1) throw std::invalid_argument("eq_repeated: reps >= 1 required");
    bool accept = true;
    for (int r = 0; r < reps; ++r) {
        accept &= eq_hash_collides(xs, ys, cfg.hash_bits, rng);
    }
    std::uint64_t bits = (std::uint64_t)cfg.hash_bits * reps + 1;
    meter.charge(bits);
    return {accept, bits};
}

int eq_repetitions_for(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eq_repetitions_for: eps in (0,1)");
    return std::max(1, (int)std::ceil(std::log2(1.0 / eps)));
}

int majority_repetitions(double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::invalid_argument("majority_repetitions: delta in (0, 1/2)");
    }
    return (int)std::ceil(18.0 * std::log(1.0 / delta));
}

RandomizedPredicate boost_majority(RandomizedPredicate base, double delta) {
    int reps = majority_repetitions(delta);
    return [base = std::move(base), reps](SharedRandomness& rng, CostMeter& meter) {
        int yes = 0;
        for (int r = 0; r < reps; ++r) yes += base(rng, meter) ? 1 : 0;
        return 2 * yes > reps;
    };
}

Verdict hd1_once(const BitString& x, const BitString& y, int buckets, SharedRandomness& rng,
                 CostMeter& meter) {
    if (x.size() != y.size()) throw std::invalid_argument("hd1_once: length mismatch");
    if (buckets < 4) throw std::invalid_argument("hd1_once: buckets >= 4 required");
    // Shared bucket assignment [n] -> [b]; only positions where x and y
    // differ flip a parity, so the sketch compares XOR parities directly.
    std::vector<std::uint64_t> parity((buckets + 63) / 64, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint32_t bucket = rng.below((std::uint32_t)buckets);
        if (x.get(i) != y.get(i)) parity[bucket / 64] ^= 1ull << (bucket % 64);
    }
    int differing = 0;
    for (auto w : parity) differing += std::popcount(w);
    std::uint64_t bits = (std::uint64_t)buckets + 1;
    meter.charge(bits);
    return {differing == 1, bits};
}

int hd1_trials_for(double delta, const SubprotocolConfig& cfg) {
    if (cfg.hd1_trials > 0) return cfg.hd1_trials;
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hd1: delta in (0,1)");
    double p = hd1_false_accept_bound(cfg.hd1_buckets);
    return std::max(1, (int)std::ceil(std::log(1.0 / delta) / std::log(1.0 / p)));
}

Verdict hd1(const BitString& x, const BitString& y, double delta, const SubprotocolConfig& cfg,
            SharedRandomness& rng, CostMeter& meter) {
    cfg.validate();
    int trials = hd1_trials_for(delta, cfg);
    bool accept = true;
    std::uint64_t bits = 0;
    for (int t = 0; t < trials; ++t) {
        Verdict v = hd1_once(x, y, cfg.hd1_buckets, rng, meter);
        accept &= v.accepted;
        bits += v.bits_used;
    }
    return {accept, bits};
}

std::vector<bool> hd1_tensor(std::span<const BitString> xs, std::span<const BitString> ys,
                             double delta, const SubprotocolConfig& cfg, SharedRandomness& rng,
                             CostMeter& meter) {
    if (xs.size() != ys.size()) throw std::invalid_argument("hd1_tensor: copy count mismatch");
    double per_copy = delta / std::max<std::size_t>(1, xs.size());
    std::vector<bool> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = hd1(xs[i], ys[i], per_copy, cfg, rng, meter).accepted;
    }
    return out;
}

std::vector<bool> eq_tensor(std::span<const BitString> xs, std::span<const BitString> ys,
                            double delta, const SubprotocolConfig& cfg, SharedRandomness& rng,
                            CostMeter& meter) {
    if (xs.size() != ys.size()) throw std::invalid_argument("eq_tensor: copy count mismatch");
    cfg.validate();
    double per_copy = delta / std::max<std::size_t>(1, xs.size());
    int t = std::max(cfg.hash_bits, eq_repetitions_for(per_copy));
    std::vector<bool> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto ex = length_prefixed(xs[i]), ey = length_prefixed(ys[i]);
        ex.resize(std::max(ex.size(), ey.size()), 0);
        ey.resize(std::max(ex.size(), ey.size()), 0);
        out[i] = eq_hash_collides(ex, ey, t, rng);
        meter.charge((std::uint64_t)t + 1);
    }
    return out;
}

std::vector<bool> eq_tensor_noisy(std::span<const BitString> xs, std::span<const BitString> ys,
                                  double delta, SharedRandomness& rng, CostMeter& meter) {
    if (xs.size() != ys.size()) throw std::invalid_argument("eq_tensor_noisy: copy count mismatch");
    if (xs.empty()) return {};
    std::vector<ProtocolTree> parts;
    parts.reserve(xs.size());
    for (const auto& x : xs) {
        QueryTree t(x.size());
        auto yes = t.add_leaf(Label::scalar(1));
        auto no = t.add_leaf(Label::scalar(0));
        auto q = (std::uint32_t)x.size();
        t.set_root(t.add_query(
            EqQueryLabeling{LabelMap::substring(0, q), LabelMap::substring(0, q)}, yes, no));
        parts.emplace_back(std::move(t));
    }
    ProtocolTree tensor = tensor_tree(std::move(parts));
    std::vector<BitString> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    BitString x = BitString::concat(xv), y = BitString::concat(yv);
    AugmentedTree aug(tensor, NoisyConfig{6.0, delta});
    NoisyRunStats st = run_noisy(aug, x, y, rng, meter);
    std::vector<bool> out(xs.size(), false);
    auto words = st.output.words();
    if (words.size() == xs.size()) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = words[i] != 0;
    }
    return out;
}

int hd_small_buckets(int ell, const SubprotocolConfig& cfg) {
    if (ell < 0) throw std::invalid_argument("hd_small: ell >= 0 required");
    if (ell <= 1) return 4;
    return cfg.smallhd_bucket_factor * ell * ell;
}

int hd_small_trials_for(double delta, int ell, const SubprotocolConfig& cfg) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hd_small: delta in (0,1)");
    double p = hd_small_false_accept_bound(ell, hd_small_buckets(ell, cfg));
    if (p <= 0.0) return 1;
    return std::max(1, (int)std::ceil(std::log(1.0 / delta) / std::log(1.0 / p)));
}

bool hd_small(const BitString& x, const BitString& y, int ell, double delta,
              const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter) {
    if (x.size() != y.size()) throw std::invalid_argument("hd_small: length mismatch");
    if (ell < 0) throw std::invalid_argument("hd_small: ell >= 0 required");
    cfg.validate();
    int buckets = hd_small_buckets(ell, cfg);
    int trials = hd_small_trials_for(delta, ell, cfg);
    int max_measured = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::uint64_t> parity((buckets + 63) / 64, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uint32_t bucket = rng.below((std::uint32_t)buckets);
            if (x.get(i) != y.get(i)) parity[bucket / 64] ^= 1ull << (bucket % 64);
        }
        int measured = 0;
        for (auto w : parity) measured += std::popcount(w);
        max_measured = std::max(max_measured, measured);
        meter.charge((std::uint64_t)buckets + 1);
    }
    return max_measured <= ell;
}

// --- probability tables ---

namespace {

// Distribution of the odd-bucket count after `balls` uniform throws.
// The count is a birth-death chain: with o odd buckets, the next ball makes
// it o-1 with probability o/b and o+1 otherwise. Exact, no cancellation.
std::vector<double> odd_count_distribution(int balls, int buckets) {
    std::vector<double> dist(buckets + 1, 0.0), next(buckets + 1, 0.0);
    dist[0] = 1.0;
    for (int d = 0; d < balls; ++d) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int o = 0; o <= buckets; ++o) {
            if (dist[o] == 0.0) continue;
            double down = (double)o / buckets;
            if (o > 0) next[o - 1] += dist[o] * down;
            if (o < buckets) next[o + 1] += dist[o] * (1.0 - down);
        }
        std::swap(dist, next);
    }
    return dist;
}

}  // namespace

double exactly_one_odd_probability(int balls, int buckets) {
    if (balls < 0 || buckets < 1) throw std::invalid_argument("exactly_one_odd_probability");
    return odd_count_distribution(balls, buckets)[1];
}

double odd_buckets_at_most_probability(int limit, int balls, int buckets) {
    if (balls < 0 || buckets < 1 || limit < 0) {
        throw std::invalid_argument("odd_buckets_at_most_probability");
    }
    auto dist = odd_count_distribution(balls, buckets);
    double p = 0.0;
    for (int o = 0; o <= std::min(limit, buckets); ++o) p += dist[o];
    return p;
}

double hd1_false_accept_bound(int buckets) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(buckets);
    if (it != cache.end()) return it->second;

    // False accepts happen only at odd distances >= 3: exact chain values
    // for d <= 9, analytic tail bound b * 2^(1-b) for larger odd d.
    double p = (double)buckets * std::pow(2.0, 1 - buckets);
    for (int d = 3; d <= 9; d += 2) {
        p = std::max(p, exactly_one_odd_probability(d, buckets));
    }
    cache[buckets] = p;
    return p;
}

double hd_small_false_accept_bound(int ell, int buckets) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, double> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(ell, buckets);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // A trial falsely accepts a distance-d pair (d > ell) iff at most ell
    // buckets end up with odd counts. Exact chain values up to d_cap; past
    // that the parity vector is close to uniform on its parity class, so
    // bound by the uniform mass plus the mixing slack b (1 - 2/b)^d.
    int d_cap = std::max(64, 4 * buckets);
    std::vector<double> dist(buckets + 1, 0.0), next(buckets + 1, 0.0);
    dist[0] = 1.0;
    double worst = 0.0;
    for (int d = 1; d <= d_cap; ++d) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int o = 0; o <= buckets; ++o) {
            if (dist[o] == 0.0) continue;
            double down = (double)o / buckets;
            if (o > 0) next[o - 1] += dist[o] * down;
            if (o < buckets) next[o + 1] += dist[o] * (1.0 - down);
        }
        std::swap(dist, next);
        if (d <= ell) continue;
        double p = 0.0;
        for (int o = 0; o <= std::min(ell, buckets); ++o) p += dist[o];
        worst = std::max(worst, p);
    }
    double uniform_mass = 0.0, binom = 1.0;  // sum_{m<=ell} C(b,m) / 2^(b-1)
    for (int m = 0; m <= std::min(ell, buckets); ++m) {
        uniform_mass += binom;
        binom = binom * (buckets - m) / (m + 1);
    }
    uniform_mass *= std::pow(2.0, 1 - buckets);
    double tail = uniform_mass + buckets * std::pow(1.0 - 2.0 / buckets, d_cap);
    worst = std::max(worst, std::min(1.0, tail));
    cache[key] = worst;
    return worst;
}

}  // namespace commsim
