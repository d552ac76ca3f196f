#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "commsim/protocol_tree.hpp"

namespace commsim {

// Boolean query matrix, possibly rectangular (query sets are closed under
// taking submatrices).
class QueryMatrix {
public:
    QueryMatrix() = default;
    QueryMatrix(std::size_t rows, std::size_t cols, bool fill = false)
        : rows_(rows), cols_(cols), cells_(rows * cols, fill ? 1 : 0) {}

    static QueryMatrix identity(std::size_t n);
    static QueryMatrix all_ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { cells_[i * cols_ + j] = v ? 1 : 0; }

    // Dense 0/1 text grid, one row per line.
    static QueryMatrix from_text(std::istream& is);
    static QueryMatrix from_text(const std::string& text);
    std::string to_text() const;

    bool operator==(const QueryMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> cells_;
};

// Row/column labelings witnessing M(i,j) = [a(i) = b(j)].
struct BlockyWitness {
    std::vector<std::uint64_t> row_labels;  // a
    std::vector<std::uint64_t> col_labels;  // b

    EqQueryLabeling to_labeling() const {
        return {LabelMap::table_of(row_labels), LabelMap::table_of(col_labels)};
    }
};

// Tests whether M is an Equality query matrix (all pairs of row supports
// equal or disjoint); returns witness labelings on success.
std::optional<BlockyWitness> is_blocky(const QueryMatrix& m);

// Independent check used by tests and the CLI: the witness reproduces M.
bool blocky_witness_valid(const QueryMatrix& m, const BlockyWitness& w);

// Largest d such that some d columns are shattered by the rows.
// Brute force; requires cols <= 24.
int vc_dimension(const QueryMatrix& m);

// Row/column vectors over {1,2} embedding a square M into an N-fold
// conjunction of copies of the matrix [[1,1],[1,0]].
struct NandEmbedding {
    std::vector<std::vector<std::uint8_t>> row_vectors;  // v: rows -> {1,2}^N
    std::vector<std::vector<std::uint8_t>> col_vectors;  // w: cols -> {1,2}^N
};

NandEmbedding nand_embed(const QueryMatrix& m);

// Evaluates the conjunction of [[1,1],[1,0]] entries at (v, w).
bool nand_conjunction(const std::vector<std::uint8_t>& v, const std::vector<std::uint8_t>& w);

// Checks the embedding cell-exactly against M.
bool nand_embed_verify(const QueryMatrix& m);

struct ClosureLimits {
    std::size_t max_base = 4;    // base at most max_base x max_base
    std::size_t max_target = 6;  // M at most max_target x max_target
};

// Whether M is obtainable from base by taking submatrices, permuting, and
// duplicating rows/columns. Bounded exhaustive search over row/column
// assignments into the base.
bool closure_member(const QueryMatrix& m, const QueryMatrix& base, ClosureLimits limits = {});

}  // namespace commsim
