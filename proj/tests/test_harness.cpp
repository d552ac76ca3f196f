#include <doctest.h>

#include "commsim/errors.hpp"
#include "commsim/harness.hpp"

using namespace commsim;

namespace {

ExperimentConfig small_noisy() {
    ExperimentConfig c;
    c.workload = "hd1-bsearch";
    c.variant = "noisy";
    c.n = 32;
    c.delta = 0.25;
    c.trials = 600;
    c.seed = 12345;
    c.threads = 2;
    return c;
}

}  // namespace

TEST_CASE("wilson interval sanity") {
    auto wi = wilson_interval(0, 100000);
    CHECK(wi.lo == 0.0);
    CHECK(wi.hi == doctest::Approx(6.634456411698258e-05).epsilon(1e-9));
    auto mid = wilson_interval(250, 1000);
    CHECK(mid.lo == doctest::Approx(0.21645462945665608).epsilon(1e-9));
    CHECK(mid.hi == doctest::Approx(0.2868409529950474).epsilon(1e-9));
    CHECK(wilson_interval(0, 0).hi == 1.0);
}

TEST_CASE("binomial upper tail matches exact summation") {
    CHECK(binomial_upper_tail(83, 0.25, 42) ==
          doctest::Approx(4.7538353941928225e-07).epsilon(1e-9));
    CHECK(binomial_upper_tail(25, 0.25, 13) ==
          doctest::Approx(0.0033704480688676597).epsilon(1e-9));
    CHECK(binomial_upper_tail(10, 0.5, 0) == 1.0);
    CHECK(binomial_upper_tail(10, 0.5, 11) == 0.0);
}

TEST_CASE("estimate_error reports are deterministic per seed") {
    ExperimentConfig c = small_noisy();
    ExperimentReport r1 = estimate_error(c);
    c.threads = 1;  // determinism must not depend on the thread count
    ExperimentReport r2 = estimate_error(c);
    CHECK(r1.to_json() == r2.to_json());
    CHECK(r1.to_csv() == r2.to_csv());
    c.seed = 999;
    ExperimentReport r3 = estimate_error(c);
    CHECK(r1.to_json() != r3.to_json());
}

TEST_CASE("noisy variant bits match the closed form with zero variance") {
    ExperimentReport r = estimate_error(small_noisy());
    CHECK(r.formula_applicable);
    CHECK(r.totals.bits_min == r.formula_bits);
    CHECK(r.totals.bits_max == r.formula_bits);
    CHECK(r.totals.violations == 0);
    CHECK(r.totals.trials == 600);
}

TEST_CASE("trials=1 produces a single-run report") {
    ExperimentConfig c = small_noisy();
    c.trials = 1;
    ExperimentReport r = estimate_error(c);
    CHECK(r.totals.trials == 1);
}

TEST_CASE("naive variant hits its worst-case formula on the worst family") {
    ExperimentConfig c = small_noisy();
    c.variant = "naive";
    c.trials = 400;
    ExperimentReport r = estimate_error(c);
    CHECK(r.formula_applicable);
    CHECK(r.totals.bits_max == r.formula_bits);
    // Per-query boosting to delta/q keeps the run error well under delta.
    CHECK(r.totals.wilson99.hi <= c.delta);
}

TEST_CASE("oracle-mode reduction has zero error on close families") {
    ExperimentConfig c;
    c.workload = "hdk";
    c.variant = "hdreduce";
    c.mode = "oracle";
    c.n = 64;
    c.k = 4;
    c.trials = 500;
    c.seed = 5;
    c.distribution = "dist:3";
    ExperimentReport r = estimate_error(c);
    CHECK(r.totals.errors == 0);
}

TEST_CASE("hdreduce randomized smoke stays within the lemma error") {
    ExperimentConfig c;
    c.workload = "hdk";
    c.variant = "hdreduce";
    c.n = 128;
    c.k = 8;
    c.trials = 800;
    c.seed = 6;
    ExperimentReport r = estimate_error(c);
    CHECK(r.totals.error_rate <= 0.25);
}

TEST_CASE("unknown configuration is rejected") {
    ExperimentConfig c = small_noisy();
    c.workload = "no-such-thing";
    CHECK_THROWS_AS(estimate_error(c), ConfigError);
    c = small_noisy();
    c.variant = "bogus";
    CHECK_THROWS_AS(estimate_error(c), ConfigError);
    c = small_noisy();
    c.trials = 0;
    CHECK_THROWS_AS(estimate_error(c), ConfigError);
}

TEST_CASE("compare_boosting reproduces the pinned formulas") {
    ExperimentConfig c;
    c.workload = "hd1-tensor";
    c.n = 256;
    c.k = 16;
    c.delta = 0.25;
    c.trials = 8;
    c.seed = 7;
    c.threads = 2;
    BoostingComparison cmp = compare_boosting(c);
    CHECK(cmp.depth == 272);
    CHECK(cmp.naive_formula_bits == 6256);   // 272 * 23
    CHECK(cmp.noisy_formula_bits == 6528);   // 6 * 4 * 272
    CHECK(cmp.noisy_measured_max == 6528);
    CHECK(cmp.naive_measured_max == 6256);
    // At this point the naive simulation is still cheaper; the crossover
    // lies at a larger tensor power.
    CHECK(cmp.noisy_formula_bits > cmp.naive_formula_bits);
    CHECK(cmp.crossover_k > 16);
    CHECK(cmp.crossover_k <= 64);
}

TEST_CASE("compare_boosting crossover is the least winning power") {
    ExperimentConfig c;
    c.workload = "hd1-bsearch";
    c.n = 256;
    c.delta = 0.25;
    c.trials = 4;
    c.seed = 8;
    BoostingComparison cmp = compare_boosting(c);
    REQUIRE(cmp.crossover_k > 0);
    int d1 = 17;
    NoisyConfig ncfg{6.0, 0.25};
    auto naive_bits = [&](int k) {
        int d = d1 * k;
        int reps = eq_repetitions_for(0.25 / d);
        return (std::uint64_t)d * (2ull * (std::uint64_t)reps + 1);
    };
    CHECK(noisy_cost(d1 * cmp.crossover_k, ncfg) < naive_bits(cmp.crossover_k));
    CHECK(noisy_cost(d1 * (cmp.crossover_k - 1), ncfg) >= naive_bits(cmp.crossover_k - 1));
}

TEST_CASE("subprotocol runner measures accept rates") {
    SubprotoReport eq = run_subproto("eq", 32, 0, 0, 0.25, {}, 500, 3);
    CHECK(eq.accepts == 500);
    CHECK(eq.bits_per_run == 3);
    SubprotoReport hd = run_subproto("hd1-once", 32, 2, 0, 0.25, {}, 500, 3);
    CHECK(hd.accepts == 0);
    CHECK_THROWS_AS(run_subproto("nope", 8, 0, 0, 0.25, {}, 10, 3), ConfigError);
    CHECK_THROWS_AS(run_subproto("eq", 8, 9, 0, 0.25, {}, 10, 3), ConfigError);
}

TEST_CASE("reports carry the versioned schema and config echo") {
    ExperimentReport r = estimate_error(small_noisy());
    CHECK(r.to_json().find("commsim.report.v1") != std::string::npos);
    CHECK(r.to_json().find("\"workload\": \"hd1-bsearch\"") != std::string::npos);
    CHECK(r.to_csv().rfind("schema,", 0) == 0);
    std::size_t lines = 0;
    for (char ch : r.to_csv()) lines += ch == '\n';
    CHECK(lines == r.families.size() + 2);  // header + families + total
}
