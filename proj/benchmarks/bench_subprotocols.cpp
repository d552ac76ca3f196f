#include <benchmark/benchmark.h>

#include "commsim/subprotocols.hpp"

using namespace commsim;

static void BM_EqOnce(benchmark::State& state) {
    SharedRandomness rng(1);
    BitString x = BitString::random((std::size_t)state.range(0), rng);
    BitString y = x;
    y.flip(0);
    SubprotocolConfig cfg;
    CostMeter meter;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eq_once(x, y, cfg, rng, meter).accepted);
    }
}
BENCHMARK(BM_EqOnce)->Arg(64)->Arg(256)->Arg(4096);

static void BM_EqBatch(benchmark::State& state) {
    SharedRandomness rng(2);
    std::vector<std::uint64_t> xs((std::size_t)state.range(0)), ys;
    for (auto& v : xs) v = rng.word();
    ys = xs;
    ys.back() ^= 1;
    SubprotocolConfig cfg;
    CostMeter meter;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eq_batch(xs, ys, cfg, rng, meter).accepted);
    }
}
BENCHMARK(BM_EqBatch)->Arg(16)->Arg(128)->Arg(1024);

static void BM_Hd1Once(benchmark::State& state) {
    SharedRandomness rng(3);
    BitString x = BitString::random((std::size_t)state.range(0), rng);
    BitString y = x;
    y.flip(1);
    CostMeter meter;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hd1_once(x, y, 16, rng, meter).accepted);
    }
}
BENCHMARK(BM_Hd1Once)->Arg(64)->Arg(256)->Arg(1024);

static void BM_HdSmall(benchmark::State& state) {
    SharedRandomness rng(4);
    BitString x = BitString::random(256, rng);
    BitString y = x;
    for (int i = 0; i < state.range(0); ++i) y.flip((std::size_t)(17 * i + 1) % 256);
    SubprotocolConfig cfg;
    CostMeter meter;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hd_small(x, y, (int)state.range(0), 0.01, cfg, rng, meter));
    }
}
BENCHMARK(BM_HdSmall)->Arg(2)->Arg(4);
