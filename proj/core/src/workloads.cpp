#include "commsim/workloads.hpp"

#include <bit>
#include <stdexcept>

#include "commsim/errors.hpp"
#include "commsim/subprotocols.hpp"

namespace commsim {

TreeGraph TreeGraph::random(std::uint32_t n, SharedRandomness& rng) {
    if (n == 0) throw std::invalid_argument("TreeGraph::random: n >= 1 required");
    TreeGraph g;
    g.parent.resize(n);
    g.parent[0] = 0;
    for (std::uint32_t v = 1; v < n; ++v) g.parent[v] = rng.below(v);
    g.validate();
    return g;
}

std::uint32_t TreeGraph::root() const {
    for (std::uint32_t v = 0; v < size(); ++v) {
        if (parent[v] == v) return v;
    }
    throw InvariantError("TreeGraph: no root (self-parent) vertex");
}

bool TreeGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    if (u >= size() || v >= size()) throw std::out_of_range("TreeGraph::adjacent");
    if (u == v) return false;
    return parent[u] == v || parent[v] == u;
}

void TreeGraph::validate() const {
    if (parent.empty()) throw InvariantError("TreeGraph: empty");
    std::uint32_t r = root();
    for (std::uint32_t v = 0; v < size(); ++v) {
        if (parent[v] >= size()) throw InvariantError("TreeGraph: parent out of range");
        std::uint32_t cur = v;
        for (std::uint32_t steps = 0; cur != r; ++steps) {
            if (steps > size()) throw InvariantError("TreeGraph: parent pointers cyclic");
            if (parent[cur] == cur) throw InvariantError("TreeGraph: second self-parent");
            cur = parent[cur];
        }
    }
}

ProtocolTree adjacency_tree(const TreeGraph& g) {
    g.validate();
    const std::uint32_t n = g.size();
    const std::uint32_t r = g.root();
    std::size_t width = std::max<std::size_t>(1, std::bit_width(n - 1));

    // Sentinels above the vertex range make the root's self-parent
    // unmatchable, so (root, root) falls through both queries.
    std::vector<std::uint64_t> a1(n), b1(n), a2(n), b2(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        a1[v] = v;
        b1[v] = (v == r) ? n : g.parent[v];
        a2[v] = (v == r) ? n : g.parent[v];
        b2[v] = v;
    }

    QueryTree t(width);
    auto leaf1 = t.add_leaf(Label::scalar(1));
    auto leaf1b = t.add_leaf(Label::scalar(1));
    auto leaf0 = t.add_leaf(Label::scalar(0));
    auto q2 = t.add_query(
        EqQueryLabeling{LabelMap::table_of(std::move(a2)), LabelMap::table_of(std::move(b2))},
        leaf1b, leaf0);
    auto q1 = t.add_query(
        EqQueryLabeling{LabelMap::table_of(std::move(a1)), LabelMap::table_of(std::move(b1))},
        leaf1, q2);
    t.set_root(q1);
    return ProtocolTree(std::move(t));
}

namespace {

// Builds the prefix-search subtree over [lo, hi): the first differing bit
// is known to lie in the interval and all earlier bits agree.
std::int32_t gt_search(QueryTree& t, std::uint32_t lo, std::uint32_t hi) {
    if (hi - lo == 1) {
        // First differing bit m: output 1 iff x_m = 1 (and then y_m = 0).
        // Distinct col labels keep (x_m, y_m) = (0, 1) unmatched.
        auto leaf1 = t.add_leaf(Label::scalar(1));
        auto leaf0 = t.add_leaf(Label::scalar(0));
        return t.add_query(
            EqQueryLabeling{LabelMap::bit_pick(lo, 0, 1), LabelMap::bit_pick(lo, 1, 2)}, leaf1,
            leaf0);
    }
    std::uint32_t mid = lo + (hi - lo + 1) / 2;
    auto in_right = gt_search(t, mid, hi);
    auto in_left = gt_search(t, lo, mid);
    // Prefix equal up to mid => first difference is at mid or later.
    return t.add_query(EqQueryLabeling{LabelMap::substring(0, mid), LabelMap::substring(0, mid)},
                       in_right, in_left);
}

}  // namespace

ProtocolTree greater_than_tree(int n_bits) {
    if (n_bits < 1) throw std::invalid_argument("greater_than_tree: n >= 1 required");
    QueryTree t((std::size_t)n_bits);
    auto search = gt_search(t, 0, (std::uint32_t)n_bits);
    auto leaf_eq = t.add_leaf(Label::scalar(0));
    auto root = t.add_query(
        EqQueryLabeling{LabelMap::substring(0, (std::uint32_t)n_bits),
                        LabelMap::substring(0, (std::uint32_t)n_bits)},
        leaf_eq, search);
    t.set_root(root);
    return ProtocolTree(std::move(t));
}

bool greater_than_exact(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("greater_than_exact: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {  // bit 0 is the most significant
        if (x.get(i) != y.get(i)) return x.get(i);
    }
    return false;
}

namespace {

// Interval [lo, hi) is known to contain every difference, and at least one.
std::int32_t hd1_search(QueryTree& t, std::uint32_t lo, std::uint32_t hi) {
    if (hi - lo == 1) return t.add_leaf(Label::scalar(1));
    std::uint32_t mid = lo + (hi - lo + 1) / 2;
    auto into_left = hd1_search(t, lo, mid);
    auto leaf_two = t.add_leaf(Label::scalar(0));
    // Left half differs; a clean right half sends the search into the left
    // half, two dirty halves certify distance >= 2.
    auto check_right = t.add_query(
        EqQueryLabeling{LabelMap::substring(mid, hi), LabelMap::substring(mid, hi)}, into_left,
        leaf_two);
    auto into_right = hd1_search(t, mid, hi);
    return t.add_query(EqQueryLabeling{LabelMap::substring(lo, mid), LabelMap::substring(lo, mid)},
                       into_right, check_right);
}

}  // namespace

ProtocolTree hd1_bsearch_tree(int n_bits) {
    if (n_bits < 1) throw std::invalid_argument("hd1_bsearch_tree: n >= 1 required");
    QueryTree t((std::size_t)n_bits);
    auto search = hd1_search(t, 0, (std::uint32_t)n_bits);
    auto leaf_eq = t.add_leaf(Label::scalar(0));
    auto root = t.add_query(
        EqQueryLabeling{LabelMap::substring(0, (std::uint32_t)n_bits),
                        LabelMap::substring(0, (std::uint32_t)n_bits)},
        leaf_eq, search);
    t.set_root(root);
    return ProtocolTree(std::move(t));
}

ProtocolTree hd1_tensor_tree(int n_bits, int copies) {
    if (copies < 1) throw std::invalid_argument("hd1_tensor_tree: copies >= 1 required");
    std::vector<ProtocolTree> parts;
    parts.reserve((std::size_t)copies);
    for (int i = 0; i < copies; ++i) parts.push_back(hd1_bsearch_tree(n_bits));
    return tensor_tree(std::move(parts));
}

}  // namespace commsim
