#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "commsim/bitstring.hpp"
#include "commsim/hd_reduction.hpp"
#include "commsim/noisy_tree.hpp"
#include "commsim/protocol_tree.hpp"
#include "commsim/stats.hpp"
#include "commsim/subprotocols.hpp"
#include "commsim/workloads.hpp"

namespace commsim {

struct ExperimentConfig {
    std::string workload = "hd1-bsearch";  // adj-tree | gt | hd1-bsearch | hd1-tensor | hdk
    std::string variant = "noisy";         // noisy | naive | hdreduce
    int n = 0;
    int k = 1;
    double delta = 0.25;
    double c_const = 6.0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    std::string mode = "rand";          // rand | oracle (hdreduce only)
    std::string schedule = "t5";        // t2 = geometric deltas, t5 = uniform deltas
    std::string distribution = "worst"; // worst | uniform | dist:<d>
    int threads = 0;                    // 0 = hardware concurrency
    double base_delta = 1e-3;
    int base_cutoff = 4;
    SubprotocolConfig subcfg{};

    void validate() const;
};

struct FamilyStats {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double error_rate = 0.0;
    WilsonInterval wilson99{};
    std::uint64_t bits_min = 0, bits_max = 0;
    double bits_mean = 0.0;
    std::uint64_t violations = 0;
    double good_mean = 0.0, bad_mean = 0.0, mistakes_mean = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    FamilyStats totals;                 // all families pooled
    std::vector<FamilyStats> families;
    std::uint64_t formula_bits = 0;     // closed-form oblivious cost, when one exists
    bool formula_applicable = false;
    double wall_ms = 0.0;  // not serialized: reports must be byte-identical per seed

    std::string to_json() const;
    std::string to_csv() const;
};

// Runs `trials` seeded, trial-parallel protocol executions against the
// exact oracle of the configured workload and aggregates errors, bit
// costs, and instrumented invariant violations.
ExperimentReport estimate_error(const ExperimentConfig& config);

struct BoostingComparison {
    ExperimentConfig config;
    int depth = 0;            // q: worst-case query count of the tree
    int naive_reps = 0;       // repetitions per naive boosted query
    std::uint64_t naive_formula_bits = 0;
    std::uint64_t noisy_formula_bits = 0;
    std::uint64_t naive_measured_max = 0;
    std::uint64_t noisy_measured_max = 0;
    double naive_error = 0.0, noisy_error = 0.0;
    double ratio = 0.0;       // noisy / naive formula bits
    int crossover_k = 0;      // least tensor power where the walk wins; 0 = none found
    double wall_ms = 0.0;     // not serialized

    std::string to_json() const;
    std::string to_csv() const;
};

// Worst-case bit comparison of the boosted walk against per-query naive
// boosting on the same tree, plus the tensor-power crossover point.
BoostingComparison compare_boosting(const ExperimentConfig& config);

struct SubprotoReport {
    std::string proto;
    int n = 0, dist = 0, ell = 0;
    double delta = 0.25;
    std::uint64_t trials = 0, accepts = 0;
    double accept_rate = 0.0;
    WilsonInterval wilson99{};
    std::uint64_t bits_per_run = 0;

    std::string to_json() const;
    std::string to_csv() const;
};

// Accept-rate measurement of one subprotocol at a fixed input distance.
SubprotoReport run_subproto(const std::string& proto, int n, int dist, int ell, double delta,
                            const SubprotocolConfig& cfg, std::uint64_t trials,
                            std::uint64_t seed);

// Deterministic workload construction shared by the harness and the CLI.
ProtocolTree build_workload_tree(const ExperimentConfig& config);
TreeGraph workload_graph(const ExperimentConfig& config);

// Draws a pair at exact Hamming distance d (positions chosen uniformly).
void random_pair_at_distance(BitString& x, BitString& y, std::size_t n, std::size_t d,
                             SharedRandomness& rng);

}  // namespace commsim
