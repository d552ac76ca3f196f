#include <benchmark/benchmark.h>

#include "commsim/harness.hpp"
#include "commsim/hd_reduction.hpp"

using namespace commsim;

static void BM_ReduceHdk(benchmark::State& state) {
    int k = (int)state.range(0);
    std::size_t n = (std::size_t)(4 * k * k);
    Schedule sched = default_schedule(std::max(k, 2), ScheduleFlavor::uniform);
    SharedRandomness gen(5);
    BitString x, y;
    random_pair_at_distance(x, y, n, (std::size_t)k, gen);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SharedRandomness rng(++seed);
        CostMeter meter;
        benchmark::DoNotOptimize(
            reduce_hdk(x, y, k, sched, ReductionMode::randomized, {}, rng, meter).accepted);
    }
}
BENCHMARK(BM_ReduceHdk)->Arg(8)->Arg(16);

static void BM_ReduceHdkOracle(benchmark::State& state) {
    int k = (int)state.range(0);
    std::size_t n = (std::size_t)(4 * k * k);
    Schedule sched = default_schedule(std::max(k, 2), ScheduleFlavor::uniform);
    SharedRandomness gen(6);
    BitString x, y;
    random_pair_at_distance(x, y, n, (std::size_t)(k + 1), gen);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SharedRandomness rng(++seed);
        CostMeter meter;
        benchmark::DoNotOptimize(
            reduce_hdk(x, y, k, sched, ReductionMode::oracle, {}, rng, meter).accepted);
    }
}
BENCHMARK(BM_ReduceHdkOracle)->Arg(8)->Arg(16);
