#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "commsim/bitstring.hpp"
#include "commsim/label.hpp"

namespace commsim {

// Labeling function of one side of an Equality query, restricted to a
// closed set of forms so trees stay serializable. All forms read the
// component-local input slice x[offset, offset+width).
struct LabelMap {
    enum class Kind : std::uint8_t { constant, table, substring, bit_pick };

    Kind kind = Kind::constant;
    std::uint64_t value = 0;            // constant
    std::vector<std::uint64_t> table;   // table: label = table[input value]
    std::uint32_t lo = 0, hi = 0;       // substring: label = x[lo, hi)
    std::uint32_t bit = 0;              // bit_pick: label = x[bit] ? if1 : if0
    std::uint64_t if0 = 0, if1 = 1;

    static LabelMap constant_of(std::uint64_t v);
    static LabelMap table_of(std::vector<std::uint64_t> t);
    static LabelMap substring(std::uint32_t lo, std::uint32_t hi);
    static LabelMap bit_pick(std::uint32_t bit, std::uint64_t if0, std::uint64_t if1);

    void eval_into(Label& out, const BitString& x, std::size_t offset, std::size_t width) const;
    Label eval(const BitString& x, std::size_t offset, std::size_t width) const {
        Label l;
        eval_into(l, x, offset, width);
        return l;
    }

    bool operator==(const LabelMap&) const = default;
};

// One Equality oracle query: answered 1 iff row(x) == col(y).
struct EqQueryLabeling {
    LabelMap row;  // Alice's labeling a_v
    LabelMap col;  // Bob's labeling b_v
    bool operator==(const EqQueryLabeling&) const = default;
};

// Named oracle predicate: answered 1 iff dist(x[lo,hi), y[lo,hi)) == 1.
// Kept for oracle-mode evaluation; the randomized compilers reject it.
struct Hd1Query {
    std::uint32_t lo = 0, hi = 0;
    bool operator==(const Hd1Query&) const = default;
};

using QueryDesc = std::variant<EqQueryLabeling, Hd1Query>;

bool exact_query_answer(const QueryDesc& q, const BitString& x, const BitString& y,
                        std::size_t offset, std::size_t width);

// Pluggable query evaluator for eval_tree; empty means exact evaluation.
using QueryOracle = std::function<bool(const QueryDesc&, const BitString&, const BitString&,
                                       std::size_t offset, std::size_t width)>;

// Materialized binary query tree over one input block. Inner nodes carry a
// query; the left child is taken when the query answers 1 ("equal").
class QueryTree {
public:
    struct Node {
        QueryDesc query{};
        Label leaf_label{};
        std::int32_t left = -1, right = -1;
        bool leaf = true;
        bool operator==(const Node&) const = default;
    };

    QueryTree() = default;
    explicit QueryTree(std::size_t input_bits) : input_bits_(input_bits) {}

    std::int32_t add_leaf(Label label);
    std::int32_t add_query(QueryDesc q, std::int32_t left, std::int32_t right);
    void set_root(std::int32_t id);

    std::int32_t root() const { return root_; }
    const Node& node(std::int32_t id) const { return nodes_.at((std::size_t)id); }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t input_bits() const { return input_bits_; }
    void set_input_bits(std::size_t b) { input_bits_ = b; }

    int depth() const;                 // query nodes on the longest root-to-leaf path
    std::uint64_t leaf_count() const;  // distinct leaves
    bool equality_only() const;

    bool operator==(const QueryTree&) const = default;

private:
    int depth_below(std::int32_t id) const;

    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    std::size_t input_bits_ = 0;
};

// Identifies a query node: component index + node id within it.
struct NodeRef {
    std::int32_t part = -1;
    std::int32_t node = -1;
    bool operator==(const NodeRef&) const = default;
};

// Protocol tree, possibly a tensor of several component trees over disjoint
// blocks of the concatenated input. A plain tree is the 1-component case.
// Tensor structure is kept implicit (component i+1's root replaces every
// leaf of component i), so depth adds while storage stays linear.
class ProtocolTree {
public:
    ProtocolTree() = default;
    explicit ProtocolTree(QueryTree part);

    const std::vector<QueryTree>& parts() const { return parts_; }
    std::size_t part_offset(std::size_t idx) const { return offsets_.at(idx); }
    std::size_t input_bits() const { return bits_; }

    int depth() const;                 // sum of component depths
    std::uint64_t leaf_count() const;  // product, saturating at uint64 max
    bool equality_only() const;

    struct Evaluation {
        Label output;                     // tuple of component leaf labels
        std::vector<NodeRef> path;        // query nodes visited, root first
        std::vector<bool> answers;        // per path node; true = "equal"/left
        std::vector<std::int32_t> leaves; // leaf id reached per component
    };

    // Deterministic tree evaluation following exact (or injected) query
    // answers. Throws std::invalid_argument when inputs do not match the
    // tree's domain.
    Evaluation evaluate(const BitString& x, const BitString& y,
                        const QueryOracle& oracle = {}) const;

    friend ProtocolTree tensor_tree(std::vector<ProtocolTree> parts);

    bool operator==(const ProtocolTree&) const = default;

private:
    void reindex();

    std::vector<QueryTree> parts_;
    std::vector<std::size_t> offsets_;
    std::size_t bits_ = 0;
};

// Tensor combination: evaluates every component on its own block and
// outputs the tuple of component outputs. Depth is the sum of depths.
ProtocolTree tensor_tree(std::vector<ProtocolTree> parts);

// Convenience wrappers.
Label eval_tree(const ProtocolTree& t, const BitString& x, const BitString& y);
int tree_depth(const ProtocolTree& t);

}  // namespace commsim
