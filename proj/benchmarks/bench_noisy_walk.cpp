#include <benchmark/benchmark.h>

#include "commsim/noisy_tree.hpp"
#include "commsim/workloads.hpp"

using namespace commsim;

static void BM_NoisyWalkBsearch(benchmark::State& state) {
    int n = (int)state.range(0);
    ProtocolTree tree = hd1_bsearch_tree(n);
    NoisyConfig cfg{6.0, 0.01};
    AugmentedTree aug(tree, cfg);
    SharedRandomness rng(7);
    BitString x = BitString::random((std::size_t)n, rng);
    BitString y = x;
    y.flip(0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SharedRandomness run_rng(++seed);
        CostMeter meter;
        benchmark::DoNotOptimize(run_noisy(aug, x, y, run_rng, meter).correct);
    }
    state.SetLabel("d=" + std::to_string(aug.base_depth()));
}
BENCHMARK(BM_NoisyWalkBsearch)->Arg(64)->Arg(256);

static void BM_NoisyWalkTensor(benchmark::State& state) {
    int k = (int)state.range(0);
    ProtocolTree tree = hd1_tensor_tree(256, k);
    NoisyConfig cfg{6.0, 0.25};
    AugmentedTree aug(tree, cfg);
    SharedRandomness rng(8);
    BitString x = BitString::random(tree.input_bits(), rng);
    BitString y = x;
    for (int c = 0; c < k; ++c) y.flip((std::size_t)c * 256);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SharedRandomness run_rng(++seed);
        CostMeter meter;
        benchmark::DoNotOptimize(run_noisy(aug, x, y, run_rng, meter).correct);
    }
    state.SetLabel("d=" + std::to_string(aug.base_depth()));
}
BENCHMARK(BM_NoisyWalkTensor)->Arg(4)->Arg(16);
