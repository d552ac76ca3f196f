#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "commsim/harness.hpp"
#include "commsim/stats.hpp"
#include "commsim/subprotocols.hpp"

using namespace commsim;

namespace {

const SubprotocolConfig kCfg{};

// Exact enumeration oracle: distribute `d` differing coordinates over all
// b^d bucket assignments and count outcomes with exactly one odd bucket.
double one_odd_enumeration(int d, int b) {
    std::uint64_t hits = 0, total = 1;
    for (int i = 0; i < d; ++i) total *= (std::uint64_t)b;
    std::vector<int> assign((std::size_t)d, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<int> count((std::size_t)b, 0);
        for (int i = 0; i < d; ++i) {
            count[(std::size_t)(c % (std::uint64_t)b)]++;
            c /= (std::uint64_t)b;
        }
        int odd = 0;
        for (int v : count) odd += v & 1;
        hits += odd == 1;
    }
    return (double)hits / (double)total;
}

}  // namespace

TEST_CASE("exact reference computations") {
    CHECK(exact_hamming(BitString::parse("0101"), BitString::parse("0110")) == 2);
    CHECK_FALSE(exact_eq(BitString::parse("0101"), BitString::parse("0110")));
    CHECK(exact_eq(BitString::parse(""), BitString::parse("")));
    CHECK_THROWS_AS(exact_hamming(BitString::parse("01"), BitString::parse("0")),
                    std::invalid_argument);
    SharedRandomness rng(11);
    for (int t = 0; t < 50; ++t) {
        BitString x = BitString::random(130, rng), y = BitString::random(130, rng);
        std::size_t recount = 0;
        for (std::size_t i = 0; i < 130; ++i) recount += x.get(i) != y.get(i);
        CHECK(exact_hamming(x, y) == recount);
    }
}

TEST_CASE("eq_once is one-sided and charges 3 bits") {
    SharedRandomness rng(1);
    CostMeter meter;
    for (int t = 0; t < 2000; ++t) {
        BitString x = BitString::random(40, rng);
        Verdict v = eq_once(x, x, kCfg, rng, meter);
        CHECK(v.accepted);
        CHECK(v.bits_used == 3);
    }
    Verdict e = eq_once(BitString(), BitString(), kCfg, rng, meter);
    CHECK(e.accepted);  // empty strings are equal
    CHECK(meter.bits() == 3 * 2001);
}

TEST_CASE("eq_once false-accept rate is exactly 1/4") {
    SharedRandomness rng(2);
    CostMeter meter;
    std::uint64_t accepts = 0;
    const std::uint64_t trials = 100000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BitString x = BitString::random(32, rng);
        BitString y = x;
        y.flip((std::size_t)rng.below(32));
        accepts += eq_once(x, y, kCfg, rng, meter).accepted;
    }
    auto wi = wilson_interval(accepts, trials);
    CHECK(wi.lo <= 0.25);
    CHECK(wi.hi >= 0.25);
}

TEST_CASE("eq_once distinguishes strings of different lengths") {
    SharedRandomness rng(3);
    CostMeter meter;
    // "0" vs "00": unequal as strings; acceptance must be ~1/4, not 1.
    std::uint64_t accepts = 0;
    for (int t = 0; t < 20000; ++t) {
        accepts += eq_once(BitString::parse("0"), BitString::parse("00"), kCfg, rng, meter)
                       .accepted;
    }
    auto wi = wilson_interval(accepts, 20000);
    CHECK(wi.lo <= 0.25);
    CHECK(wi.hi >= 0.25);
}

TEST_CASE("eq_batch semantics and cost") {
    SharedRandomness rng(4);
    CostMeter meter;
    std::vector<std::uint64_t> empty;
    CHECK(eq_batch(empty, empty, kCfg, rng, meter).accepted);

    std::vector<std::uint64_t> xs(10), ys(10);
    for (int i = 0; i < 10; ++i) xs[(std::size_t)i] = ys[(std::size_t)i] = (std::uint64_t)i * 7;
    for (int t = 0; t < 2000; ++t) {
        Verdict v = eq_batch(xs, ys, kCfg, rng, meter);
        CHECK(v.accepted);
        CHECK(v.bits_used == 3);  // cost independent of the sequence length
    }

    std::vector<std::uint64_t> zs = ys;
    zs[7] ^= 1;
    std::uint64_t accepts = 0;
    const std::uint64_t trials = 100000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        accepts += eq_batch(xs, zs, kCfg, rng, meter).accepted;
    }
    auto wi = wilson_interval(accepts, trials);
    CHECK(wi.lo <= 0.25);
    CHECK(wi.hi >= 0.25);

    std::vector<std::uint64_t> shorter(9);
    CHECK_THROWS_AS(eq_batch(xs, shorter, kCfg, rng, meter), std::invalid_argument);
}

TEST_CASE("majority boosting repetition count and error") {
    CHECK(majority_repetitions(0.25) == 25);
    CHECK_THROWS_AS(majority_repetitions(0.6), std::invalid_argument);

    // Base predicate with exact two-sided error 1/4 (true answer: false).
    RandomizedPredicate base = [](SharedRandomness& rng, CostMeter& meter) {
        meter.charge(1);
        return rng.below(4) == 0;
    };
    auto boosted = boost_majority(base, 0.01);
    int reps = majority_repetitions(0.01);
    SharedRandomness rng(5);
    CostMeter meter;
    std::uint64_t wrong = 0;
    const std::uint64_t trials = 100000;
    for (std::uint64_t t = 0; t < trials; ++t) wrong += boosted(rng, meter);
    CHECK((double)wrong / (double)trials <= 0.01);
    CHECK(meter.bits() == trials * (std::uint64_t)reps);  // cost = reps x per-trial cost
    // Reference tail: P[Bin(reps, 1/4) > reps/2] must itself be tiny.
    CHECK(binomial_upper_tail(reps, 0.25, reps / 2 + 1) <= 0.01);

    auto never = boost_majority(
        [](SharedRandomness&, CostMeter&) { return false; }, 0.05);
    for (int t = 0; t < 100; ++t) CHECK_FALSE(never(rng, meter));
}

TEST_CASE("hd1_once completeness, parity soundness, and cost") {
    SharedRandomness rng(6);
    CostMeter meter;
    for (int t = 0; t < 2000; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 64, 1, rng);
        Verdict v = hd1_once(x, y, 16, rng, meter);
        CHECK(v.accepted);
        CHECK(v.bits_used == 17);
    }
    for (int t = 0; t < 2000; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 64, 2, rng);
        CHECK_FALSE(hd1_once(x, y, 16, rng, meter).accepted);
    }
    for (int t = 0; t < 500; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 64, 0, rng);
        CHECK_FALSE(hd1_once(x, y, 16, rng, meter).accepted);
    }
}

TEST_CASE("hd1_once distance-3 acceptance matches the exact enumeration") {
    // (3b-2)/b^2 via full enumeration of bucket assignments.
    CHECK(one_odd_enumeration(3, 16) == doctest::Approx(46.0 / 256.0).epsilon(1e-12));
    CHECK(exactly_one_odd_probability(3, 16) == doctest::Approx(46.0 / 256.0).epsilon(1e-12));
    for (int b : {8, 16, 32}) {
        CHECK(exactly_one_odd_probability(3, b) ==
              doctest::Approx((3.0 * b - 2) / ((double)b * b)).epsilon(1e-12));
        CHECK(one_odd_enumeration(3, b) ==
              doctest::Approx(exactly_one_odd_probability(3, b)).epsilon(1e-12));
    }

    SharedRandomness rng(7);
    CostMeter meter;
    std::uint64_t accepts = 0;
    const std::uint64_t trials = 100000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 48, 3, rng);
        accepts += hd1_once(x, y, 16, rng, meter).accepted;
    }
    auto wi = wilson_interval(accepts, trials);
    CHECK(wi.lo <= 46.0 / 256.0);
    CHECK(wi.hi >= 46.0 / 256.0);
}

TEST_CASE("hd1 trial conjunction") {
    SharedRandomness rng(8);
    CostMeter meter;
    SubprotocolConfig cfg;
    for (int t = 0; t < 500; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 33, 1, rng);
        CHECK(hd1(x, y, 0.01, cfg, rng, meter).accepted);
    }
    for (int t = 0; t < 500; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 33, 0, rng);
        CHECK_FALSE(hd1(x, y, 0.25, cfg, rng, meter).accepted);
    }
    // Two pinned trials at distance 3: acceptance = (46/256)^2.
    SubprotocolConfig two = cfg;
    two.hd1_trials = 2;
    std::uint64_t accepts = 0;
    const std::uint64_t trials = 200000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 48, 3, rng);
        accepts += hd1(x, y, 0.25, two, rng, meter).accepted;
    }
    double expect = (46.0 / 256.0) * (46.0 / 256.0);
    auto wi = wilson_interval(accepts, trials);
    CHECK(wi.lo <= expect);
    CHECK(wi.hi >= expect);
}

TEST_CASE("hd1 derived trial count meets the target error") {
    SubprotocolConfig cfg;
    double p = hd1_false_accept_bound(16);
    CHECK(p == doctest::Approx(46.0 / 256.0));  // distance 3 dominates at 16 buckets
    int trials = hd1_trials_for(0.01, cfg);
    CHECK(std::pow(p, trials) <= 0.01);
}

TEST_CASE("tensor combinators") {
    SharedRandomness rng(9);
    CostMeter meter;
    SubprotocolConfig cfg;

    std::vector<BitString> xs(4), ys(4);
    for (int c = 0; c < 4; ++c) random_pair_at_distance(xs[(std::size_t)c], ys[(std::size_t)c], 32, 1, rng);
    auto r = hd1_tensor(xs, ys, 0.05, cfg, rng, meter);
    for (bool v : r) CHECK(v);

    for (int c = 0; c < 4; ++c) ys[(std::size_t)c] = xs[(std::size_t)c];
    auto e = eq_tensor(xs, ys, 0.05, cfg, rng, meter);
    for (bool v : e) CHECK(v);

    std::vector<BitString> x1(1), y1(1);
    random_pair_at_distance(x1[0], y1[0], 32, 1, rng);
    CHECK(hd1_tensor(x1, y1, 0.25, cfg, rng, meter)[0]);
}

TEST_CASE("hd1_tensor with one copy is exactly hd1 at the same error") {
    SubprotocolConfig cfg;
    SharedRandomness gen(23);
    std::vector<BitString> xs(1), ys(1);
    random_pair_at_distance(xs[0], ys[0], 48, 3, gen);
    SharedRandomness r1(24), r2(24);  // twin streams
    CostMeter m1, m2;
    for (int t = 0; t < 300; ++t) {
        bool a = hd1_tensor(xs, ys, 0.05, cfg, r1, m1)[0];
        bool b = hd1(xs[0], ys[0], 0.05, cfg, r2, m2).accepted;
        CHECK(a == b);
    }
    CHECK(m1.bits() == m2.bits());
    CHECK(r1.position() == r2.position());
}

TEST_CASE("hd1_tensor joint error under mixed distances") {
    SharedRandomness rng(10);
    CostMeter meter;
    SubprotocolConfig cfg;
    const std::size_t k = 8;
    std::uint64_t wrong = 0;
    const std::uint64_t trials = 20000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<BitString> xs(k), ys(k);
        std::vector<bool> truth(k);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t d = c % 4;
            random_pair_at_distance(xs[c], ys[c], 64, d, rng);
            truth[c] = d == 1;
        }
        auto got = hd1_tensor(xs, ys, 0.05, cfg, rng, meter);
        wrong += got != truth;
    }
    CHECK(wilson_interval(wrong, trials).hi <= 0.05);
}

TEST_CASE("eq_tensor with one copy at delta 1/4 is exactly eq_once") {
    SubprotocolConfig cfg;
    SharedRandomness gen(20);
    std::vector<BitString> xs(1), ys(1);
    random_pair_at_distance(xs[0], ys[0], 48, 1, gen);
    SharedRandomness r1(21), r2(21);  // twin streams: identical draws
    CostMeter m1, m2;
    for (int t = 0; t < 500; ++t) {
        bool a = eq_tensor(xs, ys, 0.25, cfg, r1, m1)[0];
        bool b = eq_once(xs[0], ys[0], cfg, r2, m2).accepted;
        CHECK(a == b);
    }
    CHECK(m1.bits() == m2.bits());
    CHECK(m1.bits() == 3 * 500);
}

TEST_CASE("eq_tensor_noisy computes all copies in one walk") {
    SharedRandomness rng(22);
    CostMeter meter;
    const std::size_t k = 12;
    std::uint64_t wrong = 0;
    const std::uint64_t trials = 2000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<BitString> xs(k), ys(k);
        std::vector<bool> truth(k);
        for (std::size_t c = 0; c < k; ++c) {
            xs[c] = BitString::random(24, rng);
            ys[c] = xs[c];
            if (rng.bit()) {
                ys[c].flip(rng.below(24));
                truth[c] = false;
            } else {
                truth[c] = true;
            }
        }
        CostMeter m;
        auto got = eq_tensor_noisy(xs, ys, 0.05, rng, m);
        // One walk for all copies: 24 * max(k, ceil(6 log2(20))) bits.
        CHECK(m.bits() == 24ull * 26ull);
        wrong += got != truth;
    }
    CHECK(wilson_interval(wrong, trials).hi <= 0.05);
}

TEST_CASE("eq_tensor error with one unequal pair") {
    SharedRandomness rng(11);
    CostMeter meter;
    SubprotocolConfig cfg;
    const std::size_t k = 16;
    std::uint64_t wrong = 0;
    const std::uint64_t trials = 20000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<BitString> xs(k), ys(k);
        for (std::size_t c = 0; c < k; ++c) {
            xs[c] = BitString::random(32, rng);
            ys[c] = xs[c];
        }
        ys[5].flip(13);
        auto got = eq_tensor(xs, ys, 0.01, cfg, rng, meter);
        bool ok = !got[5];
        for (std::size_t c = 0; c < k; ++c) {
            if (c != 5) ok &= got[c];
        }
        wrong += !ok;
    }
    CHECK(wilson_interval(wrong, trials).hi <= 0.01);
}

TEST_CASE("hd_small one-sided completeness") {
    SharedRandomness rng(12);
    CostMeter meter;
    SubprotocolConfig cfg;
    for (int t = 0; t < 300; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 64, 0, rng);
        CHECK(hd_small(x, y, 0, 0.01, cfg, rng, meter));
    }
    for (int ell : {1, 2, 3, 4}) {
        for (int t = 0; t < 300; ++t) {
            BitString x, y;
            random_pair_at_distance(x, y, 64, (std::size_t)ell, rng);
            CHECK(hd_small(x, y, ell, 0.01, cfg, rng, meter));
        }
    }
    CHECK_THROWS_AS(hd_small(BitString(4), BitString(4), -1, 0.01, cfg, rng, meter),
                    std::invalid_argument);
}

TEST_CASE("hd_small soundness at distance ell+1") {
    SharedRandomness rng(13);
    CostMeter meter;
    SubprotocolConfig cfg;
    std::uint64_t accepts = 0;
    const std::uint64_t trials = 20000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BitString x, y;
        random_pair_at_distance(x, y, 128, 4, rng);
        accepts += hd_small(x, y, 3, 0.01, cfg, rng, meter);
    }
    CHECK(wilson_interval(accepts, trials).hi <= 0.01);
}

TEST_CASE("costs are oblivious: bits depend only on parameters") {
    SharedRandomness rng(14);
    SubprotocolConfig cfg;
    std::uint64_t eq_bits = 0, hd1_bits = 0, small_bits = 0;
    for (int t = 0; t < 50; ++t) {
        BitString x = BitString::random(64, rng), y = BitString::random(64, rng);
        CostMeter m1, m2, m3;
        eq_once(x, y, cfg, rng, m1);
        hd1(x, y, 0.05, cfg, rng, m2);
        hd_small(x, y, 2, 0.05, cfg, rng, m3);
        if (t == 0) {
            eq_bits = m1.bits();
            hd1_bits = m2.bits();
            small_bits = m3.bits();
        }
        CHECK(m1.bits() == eq_bits);
        CHECK(m2.bits() == hd1_bits);
        CHECK(m3.bits() == small_bits);
    }
}

TEST_CASE("probability tables are sane") {
    // Odd bucket count has the parity of the ball count.
    CHECK(exactly_one_odd_probability(2, 16) == 0.0);
    CHECK(exactly_one_odd_probability(1, 16) == 1.0);
    CHECK(odd_buckets_at_most_probability(16, 7, 16) == doctest::Approx(1.0));
    // Exact enumeration cross-checks of the chain at distance 5.
    CHECK(exactly_one_odd_probability(5, 4) == doctest::Approx(one_odd_enumeration(5, 4)));
    CHECK(exactly_one_odd_probability(5, 8) == doctest::Approx(one_odd_enumeration(5, 8)));
    // Bound tables dominate their exact entries.
    for (int b : {4, 8, 16, 32}) {
        for (int d = 3; d <= 9; d += 2) {
            CHECK(hd1_false_accept_bound(b) >= exactly_one_odd_probability(d, b) - 1e-12);
        }
    }
    for (int ell : {0, 1, 2, 3, 4}) {
        int b = hd_small_buckets(ell, SubprotocolConfig{});
        for (int d = ell + 1; d <= 3 * b; ++d) {
            CHECK(hd_small_false_accept_bound(ell, b) >=
                  odd_buckets_at_most_probability(ell, d, b) - 1e-12);
        }
    }
}

TEST_CASE("config invariants are enforced") {
    SubprotocolConfig bad;
    bad.hd1_buckets = 3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SubprotocolConfig{};
    bad.hash_bits = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
