#include <doctest.h>

#include "commsim/errors.hpp"
#include "commsim/noisy_tree.hpp"
#include "commsim/stats.hpp"
#include "commsim/subprotocols.hpp"
#include "commsim/workloads.hpp"

using namespace commsim;

TEST_CASE("extension depth and round formulas") {
    CHECK(extension_depth({6.0, 0.25}) == 12);
    CHECK(extension_depth({6.0, 1.0 / 1024.0}) == 60);
    CHECK(rounds_for(16, {6.0, 0.01}) == 160);
    CHECK(rounds_for(272, {6.0, 0.25}) == 1088);
    CHECK(rounds_for(1, {6.0, 0.25}) == 48);
    CHECK(noisy_cost(16, {6.0, 0.01}) == 960);
    CHECK(noisy_cost(272, {6.0, 0.25}) == 6528);
    CHECK_THROWS_AS(rounds_for(0, {6.0, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(extension_depth({6.0, 0.7}), std::invalid_argument);
}

TEST_CASE("augment validates and preserves structure") {
    ProtocolTree t = hd1_bsearch_tree(8);
    AugmentedTree aug(t, {6.0, 0.25});
    CHECK(aug.extension_depth() == 12);
    CHECK(aug.base_depth() == tree_depth(t));
    CHECK(aug.extension_count() == t.leaf_count());

    // Non-Equality nodes are rejected.
    QueryTree q(4);
    auto l1 = q.add_leaf(Label::scalar(1));
    auto l0 = q.add_leaf(Label::scalar(0));
    q.set_root(q.add_query(Hd1Query{0, 4}, l1, l0));
    CHECK_THROWS_AS(AugmentedTree(ProtocolTree(std::move(q)), {6.0, 0.25}),
                    std::invalid_argument);

    // Mismatched labeling shapes are rejected.
    QueryTree s(8);
    auto a = s.add_leaf(Label::scalar(1));
    auto b = s.add_leaf(Label::scalar(0));
    s.set_root(s.add_query(
        EqQueryLabeling{LabelMap::substring(0, 8), LabelMap::constant_of(3)}, a, b));
    CHECK_THROWS_AS(AugmentedTree(ProtocolTree(std::move(s)), {6.0, 0.25}),
                    std::invalid_argument);
}

TEST_CASE("augment lifts a root-only tree with a synthetic query") {
    QueryTree q(2);
    q.set_root(q.add_leaf(Label::scalar(7)));
    AugmentedTree aug(ProtocolTree(std::move(q)), {6.0, 0.25});
    CHECK(aug.base_depth() == 1);
    SharedRandomness rng(3);
    CostMeter meter;
    NoisyRunStats st = run_noisy(aug, BitString::parse("01"), BitString::parse("10"), rng, meter);
    CHECK(st.output == Label::scalar(7));
    CHECK(st.correct);
}

TEST_CASE("exact-check walk follows the correct path with zero bad rounds") {
    for (int n : {8, 32}) {
        ProtocolTree t = hd1_bsearch_tree(n);
        AugmentedTree aug(t, {6.0, 0.25});
        SharedRandomness rng(17);
        for (int round = 0; round < 50; ++round) {
            BitString x = BitString::random((std::size_t)n, rng);
            BitString y = round % 2 ? x : BitString::random((std::size_t)n, rng);
            if (round % 3 == 0) {
                y = x;
                y.flip(rng.below((std::uint32_t)n));
            }
            CostMeter meter;
            NoisyRunStats st = run_noisy(aug, x, y, rng, meter, true);
            CHECK(st.correct);
            CHECK(st.mistakes == 0);
            CHECK(st.bad == 0);
            CHECK(st.good == st.rounds);
            CHECK(st.finished_in_extension);
            CHECK(st.output == eval_tree(t, x, y));
        }
    }
}

TEST_CASE("noisy cost is oblivious: exact bits on every run") {
    SharedRandomness rng(19);
    for (double delta : {0.25, 0.01}) {
        ProtocolTree t = hd1_bsearch_tree(16);
        NoisyConfig cfg{6.0, delta};
        AugmentedTree aug(t, cfg);
        std::uint64_t expect = noisy_cost(aug.base_depth(), cfg);
        for (int round = 0; round < 50; ++round) {
            BitString x = BitString::random(16, rng), y = BitString::random(16, rng);
            CostMeter meter;
            NoisyRunStats st = run_noisy(aug, x, y, rng, meter);
            CHECK(meter.bits() == expect);
            CHECK(st.bits == expect);
        }
    }
}

TEST_CASE("proof bookkeeping invariants hold on fuzzed runs") {
    SharedRandomness seeds(23);
    TreeGraph g;
    g.parent = {0, 0, 0, 1, 1, 2, 5};
    std::vector<ProtocolTree> trees;
    trees.push_back(hd1_bsearch_tree(16));
    trees.push_back(greater_than_tree(12));
    trees.push_back(adjacency_tree(g));
    trees.push_back(hd1_tensor_tree(8, 3));
    for (const auto& t : trees) {
        for (double delta : {0.25, 0.05}) {
            NoisyConfig cfg{6.0, delta};
            AugmentedTree aug(t, cfg);
            int d = aug.base_depth();
            for (int run = 0; run < 400; ++run) {
                std::uint64_t seed = seeds.word();
                SharedRandomness rng(seed);
                std::size_t nbits = t.input_bits();
                BitString x, y;
                if (t.parts()[0].node(t.parts()[0].root()).leaf) continue;
                if (tree_depth(t) == 2 && nbits < 8) {
                    // adjacency: stay inside the vertex tables
                    x = encode_index(rng.below(7), nbits);
                    y = encode_index(rng.below(7), nbits);
                } else {
                    x = BitString::random(nbits, rng);
                    y = run % 2 ? BitString::random(nbits, rng) : x;
                    if (run % 3 == 0) {
                        y = x;
                        y.flip(rng.below((std::uint32_t)nbits));
                    }
                }
                CostMeter meter;
                NoisyRunStats st = run_noisy(aug, x, y, rng, meter);
                CHECK(st.good + st.bad == st.rounds);
                CHECK(st.bad <= 2 * st.mistakes);
                if (st.good > (std::uint64_t)d) CHECK(st.correct);
                CHECK_FALSE(st.up_move_on_correct_path);
                CHECK(st.defaulted == !st.finished_in_extension);
            }
        }
    }
}

TEST_CASE("runs replay bit-exactly from the same seed and position") {
    ProtocolTree t = hd1_bsearch_tree(32);
    AugmentedTree aug(t, {6.0, 0.05});
    SharedRandomness gen(29);
    BitString x = BitString::random(32, gen), y = BitString::random(32, gen);
    y.flip(3);
    SharedRandomness r1(77), r2(77);
    CostMeter m1, m2;
    NoisyRunStats s1 = run_noisy(aug, x, y, r1, m1);
    NoisyRunStats s2 = run_noisy(aug, x, y, r2, m2);
    CHECK(s1.output == s2.output);
    CHECK(s1.good == s2.good);
    CHECK(s1.bad == s2.bad);
    CHECK(s1.mistakes == s2.mistakes);
    CHECK(m1.bits() == m2.bits());
    CHECK(r1.position() == r2.position());
}

TEST_CASE("measured error stays under delta on a small workload") {
    ProtocolTree t = hd1_bsearch_tree(64);
    NoisyConfig cfg{6.0, 0.25};
    AugmentedTree aug(t, cfg);
    SharedRandomness seeds(31);
    std::uint64_t errors = 0;
    const std::uint64_t trials = 4000;
    for (std::uint64_t i = 0; i < trials; ++i) {
        SharedRandomness rng(seeds.word());
        BitString x = BitString::random(64, rng);
        BitString y = x;
        if (i % 3 != 0) y.flip(rng.below(64));
        if (i % 5 == 0) y.flip(rng.below(64));
        CostMeter meter;
        errors += !run_noisy(aug, x, y, rng, meter).correct;
    }
    CHECK(wilson_interval(errors, trials).hi <= cfg.delta);
}

TEST_CASE("per-run csv rows carry the instrumented fields") {
    CHECK(NoisyRunStats::csv_header() == "seed,d,delta,C,R,bits,good,bad,mistakes,correct");
    NoisyRunStats st;
    st.rounds = 48;
    st.bits = 288;
    st.good = 40;
    st.bad = 8;
    st.mistakes = 4;
    st.correct = true;
    std::string row = st.csv_row(9, 1, {6.0, 0.25});
    CHECK(row == "9,1,0.25,6,48,288,40,8,4,1");
}
