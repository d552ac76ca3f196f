#include "commsim/noisy_tree.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "commsim/errors.hpp"

namespace commsim {

void NoisyConfig::validate() const {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::invalid_argument("NoisyConfig: delta in (0, 1/2) required");
    }
    if (!(c_const >= 1.0)) throw std::invalid_argument("NoisyConfig: C >= 1 required");
}

int extension_depth(const NoisyConfig& cfg) {
    cfg.validate();
    return (int)std::ceil(cfg.c_const * std::log2(1.0 / cfg.delta));
}

int rounds_for(int depth, const NoisyConfig& cfg) {
    if (depth < 1) throw std::invalid_argument("rounds_for: depth >= 1 required");
    return 4 * std::max(depth, extension_depth(cfg));
}

std::uint64_t noisy_cost(int depth, const NoisyConfig& cfg) {
    return 6ull * (std::uint64_t)rounds_for(depth, cfg);
}

namespace {

struct LabelShape {
    std::size_t words;
    std::uint64_t bits;
    bool operator==(const LabelShape&) const = default;
};

LabelShape shape_of(const LabelMap& m) {
    if (m.kind == LabelMap::Kind::substring) {
        return {(std::size_t)(m.hi - m.lo + 63) / 64, (std::uint64_t)(m.hi - m.lo)};
    }
    return {1, 64};
}

}  // namespace

AugmentedTree::AugmentedTree(const ProtocolTree& base, const NoisyConfig& cfg)
    : tree_(base), cfg_(cfg) {
    cfg_.validate();
    if (!base.equality_only()) {
        throw std::invalid_argument("augment: unsupported query (only Equality nodes allowed)");
    }
    // Both sides of every query must produce labels of one shape; the
    // batched hash walks the two word sequences in lockstep.
    for (const auto& part : tree_.parts()) {
        for (std::size_t id = 0; id < part.node_count(); ++id) {
            const auto& n = part.node((std::int32_t)id);
            if (n.leaf) continue;
            const auto& eq = std::get<EqQueryLabeling>(n.query);
            if (!(shape_of(eq.row) == shape_of(eq.col))) {
                throw std::invalid_argument("augment: row/col labelings of unequal shape");
            }
        }
    }
    base_depth_ = tree_.depth();
    if (base_depth_ == 0) {
        // Root-only tree: attach a synthetic always-equal root so the walk
        // has a query to sit on; both children carry the constant output.
        BitString probe(tree_.input_bits());
        Label out = tree_.evaluate(probe, probe).output;
        QueryTree t(tree_.input_bits());
        auto l = t.add_leaf(out);
        auto r = t.add_leaf(out);
        t.set_root(t.add_query(
            EqQueryLabeling{LabelMap::constant_of(0), LabelMap::constant_of(0)}, l, r));
        tree_ = ProtocolTree(std::move(t));
        base_depth_ = 1;
    }
    ext_depth_ = commsim::extension_depth(cfg_);
}

int AugmentedTree::rounds() const { return rounds_for(base_depth_, cfg_); }

AugmentedTree augment(const ProtocolTree& base, const NoisyConfig& cfg) {
    return AugmentedTree(base, cfg);
}

std::string NoisyRunStats::csv_header() {
    return "seed,d,delta,C,R,bits,good,bad,mistakes,correct";
}

std::string NoisyRunStats::csv_row(std::uint64_t seed, int depth, const NoisyConfig& cfg) const {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%llu,%d,%.17g,%.17g,%llu,%llu,%llu,%llu,%llu,%d",
                  (unsigned long long)seed, depth, cfg.delta, cfg.c_const,
                  (unsigned long long)rounds, (unsigned long long)bits, (unsigned long long)good,
                  (unsigned long long)bad, (unsigned long long)mistakes, correct ? 1 : 0);
    return buf;
}

namespace {

// One stack frame of the walk. Frames are preallocated and reused, so the
// label buffers stop allocating after the first descent.
struct Frame {
    bool extension = false;
    std::int32_t part = 0;
    std::int32_t node = 0;  // node id, or chain index inside an extension
    bool went_left = false;
    bool truly_equal = false;
    bool on_correct = false;  // stack up to here is a prefix of the correct walk
    std::uint32_t crossed = 0;  // component leaves crossed when this frame was pushed
    Label a, b;
};

class NoisyWalk {
public:
    NoisyWalk(const AugmentedTree& aug, const BitString& x, const BitString& y)
        : aug_(aug),
          tree_(aug.tree()),
          x_(x),
          y_(y),
          correct_(tree_.evaluate(x, y)) {
        stack_.resize((std::size_t)tree_.depth() + (std::size_t)aug.extension_depth() + 2);
        junctions_.reserve(tree_.parts().size());
        push_root();
    }

    NoisyRunStats run(SharedRandomness& rng, CostMeter& meter, bool exact_checks);

private:
    void push_root() {
        std::int32_t part = 0;
        std::int32_t node = tree_.parts()[0].root();
        std::uint32_t crossed = 0;
        while (tree_.parts()[(std::size_t)part].node(node).leaf) {
            // Leading leaf-only components sit above the first real query.
            junctions_.push_back(node);
            ++crossed;
            ++part;
            node = tree_.parts()[(std::size_t)part].root();
        }
        Frame& f = stack_[0];
        f.extension = false;
        f.part = part;
        f.node = node;
        f.crossed = crossed;
        f.on_correct = true;
        fill_labels(f);
        top_ = 1;
    }

    void fill_labels(Frame& f) {
        const QueryTree& part = tree_.parts()[(std::size_t)f.part];
        const auto& eq = std::get<EqQueryLabeling>(part.node(f.node).query);
        std::size_t off = tree_.part_offset((std::size_t)f.part);
        std::size_t width = part.input_bits();
        eq.row.eval_into(f.a, x_, off, width);
        eq.col.eval_into(f.b, y_, off, width);
        f.truly_equal = f.a == f.b;
    }

    void descend(bool left) {
        Frame& cur = stack_[top_ - 1];
        if (cur.extension) {
            if (cur.node + 1 >= aug_.extension_depth()) return;  // bottom of the chain
            cur.went_left = left;
            Frame& f = stack_[top_];
            f.extension = true;
            f.part = cur.part;
            f.node = cur.node + 1;
            f.crossed = 0;
            f.went_left = false;
            f.a = cur.a;
            f.b = cur.b;
            f.truly_equal = cur.truly_equal;
            f.on_correct = cur.on_correct;
            ++top_;
            return;
        }
        cur.went_left = left;
        const auto& parts = tree_.parts();
        std::int32_t part = cur.part;
        const auto& n = parts[(std::size_t)part].node(cur.node);
        std::int32_t next = left ? n.left : n.right;
        std::uint32_t crossed = 0;
        bool oncorrect = cur.on_correct;
        while (parts[(std::size_t)part].node(next).leaf) {
            if (oncorrect) oncorrect = correct_.leaves[(std::size_t)part] == next;
            junctions_.push_back(next);
            ++crossed;
            if ((std::size_t)part + 1 == parts.size()) {
                // Reached a leaf of the full tree: enter its extension
                // chain, whose nodes repeat the leaf's parent query.
                Frame& parent = stack_[top_ - 1];
                Frame& f = stack_[top_];
                f.extension = true;
                f.part = parent.part;
                f.node = 0;
                f.crossed = crossed;
                f.went_left = false;
                f.a = parent.a;
                f.b = parent.b;
                f.truly_equal = parent.truly_equal;
                f.on_correct = oncorrect;
                ++top_;
                return;
            }
            ++part;
            next = parts[(std::size_t)part].root();
        }
        Frame& f = stack_[top_];
        f.extension = false;
        f.part = part;
        f.node = next;
        f.crossed = crossed;
        f.went_left = false;
        fill_labels(f);
        f.on_correct = oncorrect && (std::size_t)top_ < correct_.path.size() &&
                       correct_.path[(std::size_t)top_] == NodeRef{part, next};
        ++top_;
    }

    void ascend() {
        if (top_ == 1) return;  // clamp at the root
        Frame& cur = stack_[top_ - 1];
        junctions_.resize(junctions_.size() - cur.crossed);
        --top_;
    }

    const AugmentedTree& aug_;
    const ProtocolTree& tree_;
    const BitString& x_;
    const BitString& y_;
    ProtocolTree::Evaluation correct_;
    std::vector<Frame> stack_;
    std::vector<std::int32_t> junctions_;  // leaf chosen per crossed component
    std::size_t top_ = 0;
};

NoisyRunStats NoisyWalk::run(SharedRandomness& rng, CostMeter& meter, bool exact_checks) {
    NoisyRunStats stats;
    const int rounds = aug_.rounds();
    stats.rounds = (std::uint64_t)rounds;

    for (int r = 0; r < rounds; ++r) {
        // Batched re-check of every ancestor where the walk went left.
        std::uint64_t ax0 = 0, ax1 = 0, ay0 = 0, ay1 = 0;
        bool batch_truly_equal = true;
        for (std::size_t i = 0; i + 1 < top_; ++i) {
            const Frame& e = stack_[i];
            if (!e.went_left) continue;
            batch_truly_equal &= e.truly_equal;
            if (exact_checks) continue;
            auto aw = e.a.words(), bw = e.b.words();
            for (std::size_t w = 0; w < aw.size(); ++w) {
                std::uint64_t m0 = rng.word(), m1 = rng.word();
                ax0 ^= m0 & aw[w];
                ay0 ^= m0 & bw[w];
                ax1 ^= m1 & aw[w];
                ay1 ^= m1 & bw[w];
            }
        }
        bool batch_accept = exact_checks
                                ? batch_truly_equal
                                : ((std::popcount(ax0) ^ std::popcount(ay0)) & 1) == 0 &&
                                      ((std::popcount(ax1) ^ std::popcount(ay1)) & 1) == 0;
        meter.charge(3);

        // Current-node check; exchanged every round so the cost is
        // oblivious, but its verdict only matters when the batch accepted.
        const Frame& cur = stack_[top_ - 1];
        bool cur_accept;
        if (exact_checks) {
            cur_accept = cur.truly_equal;
        } else {
            std::uint64_t cx0 = 0, cx1 = 0, cy0 = 0, cy1 = 0;
            auto aw = cur.a.words(), bw = cur.b.words();
            for (std::size_t w = 0; w < aw.size(); ++w) {
                std::uint64_t m0 = rng.word(), m1 = rng.word();
                cx0 ^= m0 & aw[w];
                cy0 ^= m0 & bw[w];
                cx1 ^= m1 & aw[w];
                cy1 ^= m1 & bw[w];
            }
            cur_accept = ((std::popcount(cx0) ^ std::popcount(cy0)) & 1) == 0 &&
                         ((std::popcount(cx1) ^ std::popcount(cy1)) & 1) == 0;
        }
        meter.charge(3);

        if (!batch_truly_equal) {
            stats.mistakes += batch_accept;
        } else if (!cur.truly_equal) {
            stats.mistakes += cur_accept;  // the batch accepts for sure (one-sided)
        }

        bool member_before = cur.on_correct;
        bool on_path_regular = !cur.extension && cur.on_correct;
        if (!batch_accept) {
            if (on_path_regular) stats.up_move_on_correct_path = true;
            ascend();
        } else {
            descend(cur_accept);
        }
        bool member_after = stack_[top_ - 1].on_correct;
        if (member_before && member_after) {
            ++stats.good;
        } else {
            ++stats.bad;
        }
    }

    stats.bits = 6ull * (std::uint64_t)rounds;
    const Frame& fin = stack_[top_ - 1];
    if (fin.extension) {
        stats.finished_in_extension = true;
        stats.final_node = NodeRef{(std::int32_t)tree_.parts().size(), fin.node};
        for (std::size_t pi = 0; pi < junctions_.size(); ++pi) {
            stats.output.append(tree_.parts()[pi].node(junctions_[pi]).leaf_label);
        }
    } else {
        stats.defaulted = true;
        stats.final_node = NodeRef{fin.part, fin.node};
        stats.output = Label::scalar(aug_.config().default_label);
    }
    stats.correct = stats.output == correct_.output;
    return stats;
}

}  // namespace

NoisyRunStats run_noisy(const AugmentedTree& aug, const BitString& x, const BitString& y,
                        SharedRandomness& rng, CostMeter& meter, bool exact_checks) {
    NoisyWalk walk(aug, x, y);
    NoisyRunStats stats = walk.run(rng, meter, exact_checks);
    if (stats.good + stats.bad != stats.rounds) {
        throw InvariantError("run_noisy: good + bad != rounds");
    }
    return stats;
}

}  // namespace commsim
