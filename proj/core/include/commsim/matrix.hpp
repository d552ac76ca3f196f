#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace commsim {

// Total N x N communication matrix with labels from an arbitrary finite set
// (labels are compared for equality only).
class ProblemMatrix {
public:
    explicit ProblemMatrix(std::size_t n, std::uint64_t fill = 0)
        : n_(n), cells_(n * n, fill) {
        if (n == 0) throw std::invalid_argument("ProblemMatrix: N must be >= 1");
    }

    std::size_t size() const { return n_; }

    std::uint64_t at(std::size_t i, std::size_t j) const {
        check(i, j);
        return cells_[i * n_ + j];
    }

    void set(std::size_t i, std::size_t j, std::uint64_t v) {
        check(i, j);
        cells_[i * n_ + j] = v;
    }

    bool operator==(const ProblemMatrix&) const = default;

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_) throw std::out_of_range("ProblemMatrix: index out of range");
    }

    std::size_t n_;
    std::vector<std::uint64_t> cells_;
};

}  // namespace commsim
