#pragma once

#include <cstdint>
#include <vector>

namespace mvdp {

/// Dense matrix over Z2 with 64-bit packed rows.
class Z2Matrix {
public:
    Z2Matrix() = default;
    Z2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64),
          bits_(std::size_t(rows) * std::size_t(words_), 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (bits_[idx(r, c)] >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (v)
            bits_[idx(r, c)] |= mask;
        else
            bits_[idx(r, c)] &= ~mask;
    }

    bool is_zero() const {
        for (auto w : bits_)
            if (w)
                return false;
        return true;
    }

    Z2Matrix operator*(const Z2Matrix& rhs) const;
    Z2Matrix operator+(const Z2Matrix& rhs) const;
    bool operator==(const Z2Matrix&) const = default;

    /// Rank by Gaussian elimination (does not modify *this).
    int rank() const;

    /// Basis of the right null space, one matrix column per basis vector,
    /// returned as row vectors of length cols().
    std::vector<std::vector<bool>> nullspace() const;

private:
    std::size_t idx(int r, int c) const {
        return std::size_t(r) * words_ + std::size_t(c >> 6);
    }

    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace mvdp
