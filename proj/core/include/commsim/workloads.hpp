#pragma once

#include <cstdint>
#include <vector>

#include "commsim/protocol_tree.hpp"
#include "commsim/randomness.hpp"

namespace commsim {

// Rooted tree on vertices 0..n-1 given by parent pointers; the root is its
// own parent.
struct TreeGraph {
    std::vector<std::uint32_t> parent;

    static TreeGraph random(std::uint32_t n, SharedRandomness& rng);

    std::uint32_t size() const { return (std::uint32_t)parent.size(); }
    std::uint32_t root() const;
    bool adjacent(std::uint32_t u, std::uint32_t v) const;
    void validate() const;  // throws InvariantError on cycles/self-loops off the root
};

// Depth-2 Equality tree deciding adjacency of two vertices in g:
// "x = p(y)?" then "p(x) = y?", with the root's self-parent excluded via
// sentinel labels so (root, root) is not adjacent.
ProtocolTree adjacency_tree(const TreeGraph& g);

// Strict comparison of n-bit big-endian integers: prefix-equality binary
// search for the first differing bit, then a final query on that bit.
// Depth <= ceil(log2 n) + 2; equal inputs output 0.
ProtocolTree greater_than_tree(int n_bits);

// Equality-query binary search deciding dist(x, y) == 1.
// Depth <= 1 + 2 ceil(log2 n).
ProtocolTree hd1_bsearch_tree(int n_bits);

// Tensor of `copies` binary-search trees over disjoint n-bit blocks.
ProtocolTree hd1_tensor_tree(int n_bits, int copies);

// Exact reference predicates for the workloads above.
bool greater_than_exact(const BitString& x, const BitString& y);

}  // namespace commsim
