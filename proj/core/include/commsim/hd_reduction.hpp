#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "commsim/bitstring.hpp"
#include "commsim/cost.hpp"
#include "commsim/randomness.hpp"
#include "commsim/subprotocols.hpp"

namespace commsim {

enum class ScheduleFlavor {
    geometric,  // delta_i = c^i / 200 (decreasing instance size, growing error)
    uniform,    // delta_i = 1 / (11 R), widened to 1 / (11 (R+1)) when needed
};

// Per-iteration error budget of the reduction. The budget must satisfy
// sum(delta_i) <= 1/10; construction enforces it.
struct Schedule {
    double shrink = 0.9;          // c: the active-difference count decays by this factor
    int rounds = 0;               // R: iteration bound the deltas must cover
    std::vector<double> deltas;   // delta_0 .. delta_R
    int base_cutoff = 4;          // loop ends once at most this many differences remain
    double base_delta = 1e-3;     // error target of the final small-distance check

    double sum() const;
    void validate() const;  // throws InvariantError when sum > 1/10
};

// ceil(log_{1/c} k): the most iterations any run may perform.
int iteration_bound(int k);

Schedule default_schedule(int k, ScheduleFlavor flavor);

// Assigns each index independently and uniformly to one of `parts` cells.
std::vector<std::vector<std::uint32_t>> random_partition(std::span<const std::uint32_t> indices,
                                                         int parts, SharedRandomness& rng);

enum class ReductionMode { randomized, oracle };

struct IterationRecord {
    int ell_before = 0;
    int ell_after = 0;
    std::uint64_t active_size = 0;  // |T|
    int singles = 0;                // s: cells measured at exactly one difference
    int weight_sum = 0;             // sum of w_i
    char halt = 'c';                // '0' / '1' when the iteration returned, 'c' otherwise
    std::uint64_t outside_diffs = 0;  // exact differences outside T after the iteration
    double delta = 0.0;             // delta_j spent on this iteration
};

struct ReductionTrace {
    std::vector<IterationRecord> iterations;
    int loop_count = 0;
    char outcome = 'b';  // '0', '1', or 'b' for the base-case check
    int final_ell = 0;
    std::uint64_t final_active = 0;

    std::string to_json_lines() const;  // one iteration per line
};

struct ReductionResult {
    bool accepted = false;  // decision: dist(x, y) <= k
    ReductionTrace trace;
};

// Decides dist(x, y) <= k by repeatedly partitioning the active index set
// into 4*ell cells, measuring each cell's distance as 0, 1, or ">= 2" with
// batched equality / distance-1 subprotocols, and discarding resolved
// cells. Oracle mode swaps the subprotocols for exact predicates while the
// partitioning stays random.
ReductionResult reduce_hdk(const BitString& x, const BitString& y, int k,
                           const Schedule& schedule, ReductionMode mode,
                           const SubprotocolConfig& cfg, SharedRandomness& rng, CostMeter& meter);

// Monte Carlo estimate of P[#distinct colors among ell uniform draws from
// [4*ell] is at most 0.6*ell]: the halting tail the reduction relies on.
double haltone_tail(int ell, std::uint64_t trials, SharedRandomness& rng);

}  // namespace commsim
