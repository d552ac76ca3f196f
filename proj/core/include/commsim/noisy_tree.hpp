#pragma once

#include <cstdint>
#include <string>

#include "commsim/cost.hpp"
#include "commsim/protocol_tree.hpp"
#include "commsim/randomness.hpp"

namespace commsim {

struct NoisyConfig {
    double c_const = 6.0;             // C; extension depth is ceil(C log2(1/delta))
    double delta = 0.25;              // target error, in (0, 1/2)
    std::uint64_t default_label = 0;  // output when the walk ends outside every extension

    void validate() const;
};

// Depth of the per-leaf extension chains.
int extension_depth(const NoisyConfig& cfg);

// Rounds of the boosted walk: 4 * max(d, ceil(C log2(1/delta))).
int rounds_for(int depth, const NoisyConfig& cfg);

// Exact bits charged by run_noisy for a depth-d tree: 6 per round.
std::uint64_t noisy_cost(int depth, const NoisyConfig& cfg);

// Equality-query tree with a chain of depth extension_depth() attached
// below every leaf; each chain node repeats the leaf's parent query. The
// chains are materialized lazily by the walk, so tensor trees stay cheap.
class AugmentedTree {
public:
    AugmentedTree(const ProtocolTree& base, const NoisyConfig& cfg);

    const ProtocolTree& tree() const { return tree_; }
    const NoisyConfig& config() const { return cfg_; }
    int base_depth() const { return base_depth_; }   // d of the tree being simulated
    int extension_depth() const { return ext_depth_; }
    std::uint64_t extension_count() const { return tree_.leaf_count(); }
    int rounds() const;

private:
    ProtocolTree tree_;  // base tree, with a synthetic root when depth was 0
    NoisyConfig cfg_;
    int base_depth_ = 0;
    int ext_depth_ = 0;
};

AugmentedTree augment(const ProtocolTree& base, const NoisyConfig& cfg);

// Bookkeeping of one boosted walk, measured against the exact path.
struct NoisyRunStats {
    std::uint64_t rounds = 0;
    std::uint64_t good = 0;      // rounds starting and ending on the correct path or its chain
    std::uint64_t bad = 0;
    std::uint64_t mistakes = 0;  // erroneous "equal" verdicts per the walk's two checks
    std::uint64_t bits = 0;
    bool finished_in_extension = false;
    bool defaulted = false;      // fallback label was returned
    bool correct = false;        // output equals the exact evaluation
    bool up_move_on_correct_path = false;  // must never happen (one-sided checks)
    NodeRef final_node;
    Label output;

    std::string csv_row(std::uint64_t seed, int depth, const NoisyConfig& cfg) const;
    static std::string csv_header();
};

// Runs the boosted random walk: every round re-checks all earlier "equal"
// branches with one batched equality, then checks the current node; a
// detected inequality moves the pointer to its parent, otherwise it
// descends. Charges exactly 6 bits per round. With exact_checks the two
// equality checks are replaced by their exact twins (oracle mode), which
// isolates the walk logic from hash collisions.
NoisyRunStats run_noisy(const AugmentedTree& aug, const BitString& x, const BitString& y,
                        SharedRandomness& rng, CostMeter& meter, bool exact_checks = false);

}  // namespace commsim
