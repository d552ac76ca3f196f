#include "commsim/protocol_tree.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace commsim {

LabelMap LabelMap::constant_of(std::uint64_t v) {
    LabelMap m;
    m.kind = Kind::constant;
    m.value = v;
    return m;
}

LabelMap LabelMap::table_of(std::vector<std::uint64_t> t) {
    LabelMap m;
    m.kind = Kind::table;
    m.table = std::move(t);
    return m;
}

LabelMap LabelMap::substring(std::uint32_t lo, std::uint32_t hi) {
    if (lo > hi) throw std::invalid_argument("LabelMap::substring: lo > hi");
    LabelMap m;
    m.kind = Kind::substring;
    m.lo = lo;
    m.hi = hi;
    return m;
}

LabelMap LabelMap::bit_pick(std::uint32_t bit, std::uint64_t if0, std::uint64_t if1) {
    LabelMap m;
    m.kind = Kind::bit_pick;
    m.bit = bit;
    m.if0 = if0;
    m.if1 = if1;
    return m;
}

void LabelMap::eval_into(Label& out, const BitString& x, std::size_t offset,
                         std::size_t width) const {
    switch (kind) {
        case Kind::constant:
            out.assign_scalar(value);
            return;
        case Kind::table: {
            std::uint64_t v = x.value(offset, offset + width);
            if (v >= table.size()) {
                throw std::out_of_range("LabelMap: input value outside labeling table");
            }
            out.assign_scalar(table[v]);
            return;
        }
        case Kind::substring:
            if (hi > width) throw std::out_of_range("LabelMap: substring outside input block");
            out.assign_bits(x, offset + lo, offset + hi);
            return;
        case Kind::bit_pick:
            if (bit >= width) throw std::out_of_range("LabelMap: bit outside input block");
            out.assign_scalar(x.get(offset + bit) ? if1 : if0);
            return;
    }
    throw std::logic_error("LabelMap: bad kind");
}

bool exact_query_answer(const QueryDesc& q, const BitString& x, const BitString& y,
                        std::size_t offset, std::size_t width) {
    if (const auto* eq = std::get_if<EqQueryLabeling>(&q)) {
        return eq->row.eval(x, offset, width) == eq->col.eval(y, offset, width);
    }
    const auto& hd = std::get<Hd1Query>(q);
    if (hd.hi > width || hd.lo > hd.hi) throw std::out_of_range("Hd1Query: bad range");
    std::size_t diff = 0;
    for (std::size_t i = hd.lo; i < hd.hi && diff < 2; ++i) {
        diff += x.get(offset + i) != y.get(offset + i);
    }
    return diff == 1;
}

std::int32_t QueryTree::add_leaf(Label label) {
    Node n;
    n.leaf = true;
    n.leaf_label = std::move(label);
    nodes_.push_back(std::move(n));
    return (std::int32_t)nodes_.size() - 1;
}

std::int32_t QueryTree::add_query(QueryDesc q, std::int32_t left, std::int32_t right) {
    if (left < 0 || right < 0 || (std::size_t)left >= nodes_.size() ||
        (std::size_t)right >= nodes_.size()) {
        throw std::invalid_argument("QueryTree::add_query: bad child id");
    }
    Node n;
    n.leaf = false;
    n.query = std::move(q);
    n.left = left;
    n.right = right;
    nodes_.push_back(std::move(n));
    return (std::int32_t)nodes_.size() - 1;
}

void QueryTree::set_root(std::int32_t id) {
    if (id < 0 || (std::size_t)id >= nodes_.size()) {
        throw std::invalid_argument("QueryTree::set_root: bad node id");
    }
    root_ = id;
}

int QueryTree::depth_below(std::int32_t id) const {
    const Node& n = node(id);
    if (n.leaf) return 0;
    return 1 + std::max(depth_below(n.left), depth_below(n.right));
}

int QueryTree::depth() const {
    if (root_ < 0) throw std::logic_error("QueryTree: no root set");
    return depth_below(root_);
}

std::uint64_t QueryTree::leaf_count() const {
    std::uint64_t c = 0;
    for (const auto& n : nodes_) c += n.leaf;
    return c;
}

bool QueryTree::equality_only() const {
    for (const auto& n : nodes_) {
        if (!n.leaf && !std::holds_alternative<EqQueryLabeling>(n.query)) return false;
    }
    return true;
}

ProtocolTree::ProtocolTree(QueryTree part) {
    parts_.push_back(std::move(part));
    reindex();
}

void ProtocolTree::reindex() {
    offsets_.clear();
    bits_ = 0;
    for (const auto& p : parts_) {
        if (p.root() < 0) throw std::invalid_argument("ProtocolTree: component has no root");
        offsets_.push_back(bits_);
        bits_ += p.input_bits();
    }
}

int ProtocolTree::depth() const {
    int d = 0;
    for (const auto& p : parts_) d += p.depth();
    return d;
}

std::uint64_t ProtocolTree::leaf_count() const {
    std::uint64_t total = 1;
    for (const auto& p : parts_) {
        std::uint64_t c = p.leaf_count();
        if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= c;
    }
    return total;
}

bool ProtocolTree::equality_only() const {
    for (const auto& p : parts_) {
        if (!p.equality_only()) return false;
    }
    return true;
}

ProtocolTree::Evaluation ProtocolTree::evaluate(const BitString& x, const BitString& y,
                                                const QueryOracle& oracle) const {
    if (parts_.empty()) throw std::invalid_argument("ProtocolTree: empty tree");
    if (x.size() != bits_ || y.size() != bits_) {
        throw std::invalid_argument("ProtocolTree::evaluate: inputs do not match domain width");
    }
    Evaluation ev;
    for (std::size_t pi = 0; pi < parts_.size(); ++pi) {
        const QueryTree& part = parts_[pi];
        std::size_t offset = offsets_[pi];
        std::size_t width = part.input_bits();
        std::int32_t cur = part.root();
        while (!part.node(cur).leaf) {
            const auto& n = part.node(cur);
            bool ans = oracle ? oracle(n.query, x, y, offset, width)
                              : exact_query_answer(n.query, x, y, offset, width);
            ev.path.push_back({(std::int32_t)pi, cur});
            ev.answers.push_back(ans);
            cur = ans ? n.left : n.right;
        }
        ev.leaves.push_back(cur);
        ev.output.append(part.node(cur).leaf_label);
    }
    return ev;
}

ProtocolTree tensor_tree(std::vector<ProtocolTree> parts) {
    if (parts.empty()) throw std::invalid_argument("tensor_tree: no components");
    ProtocolTree out;
    for (auto& p : parts) {
        for (auto& q : p.parts_) out.parts_.push_back(std::move(q));
    }
    out.reindex();
    return out;
}

Label eval_tree(const ProtocolTree& t, const BitString& x, const BitString& y) {
    return t.evaluate(x, y).output;
}

int tree_depth(const ProtocolTree& t) { return t.depth(); }

}  // namespace commsim
