#include "commsim/tree_io.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace commsim {

namespace {

void write_map(std::ostream& os, const LabelMap& m) {
    switch (m.kind) {
        case LabelMap::Kind::constant:
            os << "const " << m.value;
            return;
        case LabelMap::Kind::table:
            os << "table " << m.table.size();
            for (auto v : m.table) os << ' ' << v;
            return;
        case LabelMap::Kind::substring:
            os << "sub " << m.lo << ' ' << m.hi;
            return;
        case LabelMap::Kind::bit_pick:
            os << "bit " << m.bit << ' ' << m.if0 << ' ' << m.if1;
            return;
    }
    throw std::logic_error("write_map: bad kind");
}

LabelMap read_map(std::istream& is) {
    std::string kind;
    is >> kind;
    if (kind == "const") {
        std::uint64_t v;
        is >> v;
        return LabelMap::constant_of(v);
    }
    if (kind == "table") {
        std::size_t n;
        is >> n;
        std::vector<std::uint64_t> t(n);
        for (auto& v : t) is >> v;
        return LabelMap::table_of(std::move(t));
    }
    if (kind == "sub") {
        std::uint32_t lo, hi;
        is >> lo >> hi;
        return LabelMap::substring(lo, hi);
    }
    if (kind == "bit") {
        std::uint32_t b;
        std::uint64_t v0, v1;
        is >> b >> v0 >> v1;
        return LabelMap::bit_pick(b, v0, v1);
    }
    throw std::invalid_argument("parse_tree: unknown label map kind '" + kind + "'");
}

}  // namespace

void serialize_tree(std::ostream& os, const ProtocolTree& t) {
    os << "protocol-tree v1 parts " << t.parts().size() << " bits " << t.input_bits() << '\n';
    for (std::size_t pi = 0; pi < t.parts().size(); ++pi) {
        const QueryTree& p = t.parts()[pi];
        os << "part " << pi << " bits " << p.input_bits() << " nodes " << p.node_count()
           << " root " << p.root() << '\n';
        for (std::size_t id = 0; id < p.node_count(); ++id) {
            const auto& n = p.node((std::int32_t)id);
            os << "n " << id << ' ';
            if (n.leaf) {
                os << "leaf " << n.leaf_label.str();
            } else if (const auto* eq = std::get_if<EqQueryLabeling>(&n.query)) {
                os << "eq ";
                write_map(os, eq->row);
                os << " | ";
                write_map(os, eq->col);
                os << " l " << n.left << " r " << n.right;
            } else {
                const auto& hd = std::get<Hd1Query>(n.query);
                os << "hd1 " << hd.lo << ' ' << hd.hi << " l " << n.left << " r " << n.right;
            }
            os << '\n';
        }
    }
    os << "end\n";
}

std::string serialize_tree(const ProtocolTree& t) {
    std::ostringstream os;
    serialize_tree(os, t);
    return os.str();
}

ProtocolTree parse_tree(std::istream& is) {
    std::string tok;
    std::size_t parts = 0, total_bits = 0;
    is >> tok;
    if (tok != "protocol-tree") throw std::invalid_argument("parse_tree: bad magic");
    is >> tok;
    if (tok != "v1") throw std::invalid_argument("parse_tree: unsupported version");
    is >> tok >> parts >> tok >> total_bits;
    if (parts == 0) throw std::invalid_argument("parse_tree: no components");

    std::vector<ProtocolTree> components;
    for (std::size_t pi = 0; pi < parts; ++pi) {
        std::size_t idx = 0, bits = 0, nodes = 0;
        std::int32_t root = -1;
        is >> tok >> idx >> tok >> bits >> tok >> nodes >> tok >> root;
        QueryTree qt(bits);
        for (std::size_t id = 0; id < nodes; ++id) {
            std::size_t got = 0;
            std::string type;
            is >> tok >> got >> type;
            if (tok != "n" || got != id) throw std::invalid_argument("parse_tree: bad node line");
            if (type == "leaf") {
                std::string lbl;
                is >> lbl;
                if (qt.add_leaf(Label::parse(lbl)) != (std::int32_t)id) {
                    throw std::invalid_argument("parse_tree: node ids must be dense");
                }
            } else if (type == "eq") {
                LabelMap row = read_map(is);
                is >> tok;  // "|"
                LabelMap col = read_map(is);
                std::int32_t l, r;
                is >> tok >> l >> tok >> r;
                qt.add_query(EqQueryLabeling{std::move(row), std::move(col)}, l, r);
            } else if (type == "hd1") {
                Hd1Query hd;
                std::int32_t l, r;
                is >> hd.lo >> hd.hi >> tok >> l >> tok >> r;
                qt.add_query(hd, l, r);
            } else {
                throw std::invalid_argument("parse_tree: unknown node type '" + type + "'");
            }
        }
        qt.set_root(root);
        components.emplace_back(std::move(qt));
    }
    is >> tok;
    if (tok != "end") throw std::invalid_argument("parse_tree: missing end marker");
    ProtocolTree out = components.size() == 1 ? std::move(components[0])
                                              : tensor_tree(std::move(components));
    if (out.input_bits() != total_bits) {
        throw std::invalid_argument("parse_tree: total bit width mismatch");
    }
    return out;
}

ProtocolTree parse_tree(const std::string& text) {
    std::istringstream is(text);
    return parse_tree(is);
}

}  // namespace commsim
