#include "commsim/query_sets.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace commsim {

QueryMatrix QueryMatrix::identity(std::size_t n) {
    QueryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

QueryMatrix QueryMatrix::all_ones(std::size_t rows, std::size_t cols) {
    return QueryMatrix(rows, cols, true);
}

QueryMatrix QueryMatrix::from_text(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw std::invalid_argument("QueryMatrix: empty grid");
    QueryMatrix m(lines.size(), lines[0].size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].size() != m.cols_) {
            throw std::invalid_argument("QueryMatrix: ragged grid");
        }
        for (std::size_t j = 0; j < m.cols_; ++j) {
            char c = lines[i][j];
            if (c != '0' && c != '1') throw std::invalid_argument("QueryMatrix: expected 0/1");
            m.set(i, j, c == '1');
        }
    }
    return m;
}

QueryMatrix QueryMatrix::from_text(const std::string& text) {
    std::istringstream is(text);
    return from_text(is);
}

std::string QueryMatrix::to_text() const {
    std::string out;
    out.reserve(rows_ * (cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out += at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::optional<BlockyWitness> is_blocky(const QueryMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    // Row supports as column masks (cols <= 64 is plenty at desk scale;
    // fall back to a vector representation otherwise).
    std::vector<std::vector<std::uint8_t>> support(R, std::vector<std::uint8_t>(C));
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) support[i][j] = m.at(i, j);
    }

    // Group rows with identical nonempty supports; distinct groups must be
    // disjoint for M to be an Equality matrix.
    std::vector<std::int64_t> row_group(R, -1);
    std::vector<std::size_t> group_rep;
    for (std::size_t i = 0; i < R; ++i) {
        bool empty = std::all_of(support[i].begin(), support[i].end(),
                                 [](std::uint8_t v) { return v == 0; });
        if (empty) continue;
        for (std::size_t g = 0; g < group_rep.size(); ++g) {
            const auto& rep = support[group_rep[g]];
            bool eq = rep == support[i];
            if (eq) {
                row_group[i] = (std::int64_t)g;
                break;
            }
            bool disjoint = true;
            for (std::size_t j = 0; j < C && disjoint; ++j) {
                disjoint = !(rep[j] && support[i][j]);
            }
            if (!disjoint) return std::nullopt;
        }
        if (row_group[i] < 0) {
            row_group[i] = (std::int64_t)group_rep.size();
            group_rep.push_back(i);
        }
    }

    BlockyWitness w;
    w.row_labels.resize(R);
    w.col_labels.resize(C);
    std::uint64_t groups = group_rep.size();
    std::uint64_t fresh = groups;  // labels >= groups never match anything
    for (std::size_t i = 0; i < R; ++i) {
        w.row_labels[i] = row_group[i] >= 0 ? (std::uint64_t)row_group[i] : fresh++;
    }
    for (std::size_t j = 0; j < C; ++j) {
        std::int64_t g = -1;
        for (std::size_t gi = 0; gi < group_rep.size(); ++gi) {
            if (support[group_rep[gi]][j]) {
                g = (std::int64_t)gi;
                break;
            }
        }
        w.col_labels[j] = g >= 0 ? (std::uint64_t)g : fresh++;
    }
    if (!blocky_witness_valid(m, w)) return std::nullopt;  // cannot happen; belt and braces
    return w;
}

bool blocky_witness_valid(const QueryMatrix& m, const BlockyWitness& w) {
    if (w.row_labels.size() != m.rows() || w.col_labels.size() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.at(i, j) != (w.row_labels[i] == w.col_labels[j])) return false;
        }
    }
    return true;
}

namespace {

bool shattered(const QueryMatrix& m, const std::vector<std::size_t>& cols) {
    const std::size_t d = cols.size();
    std::vector<std::uint8_t> seen(1u << d, 0);
    std::size_t found = 0;
    for (std::size_t i = 0; i < m.rows() && found < seen.size(); ++i) {
        std::size_t pat = 0;
        for (std::size_t b = 0; b < d; ++b) pat |= (std::size_t)m.at(i, cols[b]) << b;
        if (!seen[pat]) {
            seen[pat] = 1;
            ++found;
        }
    }
    return found == seen.size();
}

bool any_shattered(const QueryMatrix& m, std::size_t d, std::vector<std::size_t>& pick,
                   std::size_t from) {
    if (pick.size() == d) return shattered(m, pick);
    std::size_t need = d - pick.size();
    for (std::size_t j = from; j + need <= m.cols(); ++j) {
        pick.push_back(j);
        bool ok = any_shattered(m, d, pick, j + 1);
        pick.pop_back();
        if (ok) return true;
    }
    return false;
}

}  // namespace

int vc_dimension(const QueryMatrix& m) {
    if (m.cols() > 24) {
        throw std::invalid_argument("vc_dimension: width above brute-force bound (24)");
    }
    int best = 0;
    for (std::size_t d = 1; d <= m.cols(); ++d) {
        if ((1ull << d) > m.rows()) break;  // cannot shatter more columns than log2(rows)
        std::vector<std::size_t> pick;
        if (!any_shattered(m, d, pick, 0)) break;
        best = (int)d;
    }
    return best;
}

NandEmbedding nand_embed(const QueryMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("nand_embed: matrix must be square");
    const std::size_t n = m.rows();
    NandEmbedding e;
    e.row_vectors.assign(n, std::vector<std::uint8_t>(n));
    e.col_vectors.assign(n, std::vector<std::uint8_t>(n));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < n; ++j) e.row_vectors[x][j] = m.at(x, j) ? 1 : 2;
    }
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t j = 0; j < n; ++j) e.col_vectors[y][j] = (j == y) ? 2 : 1;
    }
    return e;
}

bool nand_conjunction(const std::vector<std::uint8_t>& v, const std::vector<std::uint8_t>& w) {
    if (v.size() != w.size()) throw std::invalid_argument("nand_conjunction: length mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) {
        // [[1,1],[1,0]] over {1,2}: only (2,2) evaluates to 0.
        if (v[j] == 2 && w[j] == 2) return false;
    }
    return true;
}

bool nand_embed_verify(const QueryMatrix& m) {
    NandEmbedding e = nand_embed(m);
    for (std::size_t x = 0; x < m.rows(); ++x) {
        for (std::size_t y = 0; y < m.cols(); ++y) {
            if (nand_conjunction(e.row_vectors[x], e.col_vectors[y]) != m.at(x, y)) return false;
        }
    }
    return true;
}

namespace {

bool closure_search(const QueryMatrix& m, const QueryMatrix& base, std::vector<std::size_t>& rho,
                    std::size_t next_row) {
    if (next_row == m.rows()) {
        // Every column of M must match some base column under rho.
        for (std::size_t j = 0; j < m.cols(); ++j) {
            bool found = false;
            for (std::size_t c = 0; c < base.cols() && !found; ++c) {
                bool ok = true;
                for (std::size_t i = 0; i < m.rows() && ok; ++i) {
                    ok = m.at(i, j) == base.at(rho[i], c);
                }
                found = ok;
            }
            if (!found) return false;
        }
        return true;
    }
    for (std::size_t r = 0; r < base.rows(); ++r) {
        rho[next_row] = r;
        if (closure_search(m, base, rho, next_row + 1)) return true;
    }
    return false;
}

}  // namespace

bool closure_member(const QueryMatrix& m, const QueryMatrix& base, ClosureLimits limits) {
    if (base.rows() > limits.max_base || base.cols() > limits.max_base ||
        m.rows() > limits.max_target || m.cols() > limits.max_target) {
        throw std::invalid_argument("closure_member: size above brute-force limits");
    }
    std::vector<std::size_t> rho(m.rows(), 0);
    return closure_search(m, base, rho, 0);
}

}  // namespace commsim
