#include "mvdp/z2.hpp"

#include <stdexcept>

namespace mvdp {

Z2Matrix Z2Matrix::operator*(const Z2Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("Z2Matrix: dimension mismatch in product");
    Z2Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            if (!get(i, k))
                continue;
            // out.row(i) ^= rhs.row(k)
            for (int w = 0; w < rhs.words_; ++w)
                out.bits_[std::size_t(i) * out.words_ + w] ^=
                    rhs.bits_[std::size_t(k) * rhs.words_ + w];
        }
    }
    return out;
}

Z2Matrix Z2Matrix::operator+(const Z2Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Z2Matrix: dimension mismatch in sum");
    Z2Matrix out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        out.bits_[i] ^= rhs.bits_[i];
    return out;
}

int Z2Matrix::rank() const {
    Z2Matrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r) {
            if (m.get(r, col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        for (int w = 0; w < words_; ++w)
            std::swap(m.bits_[std::size_t(pivot) * words_ + w],
                      m.bits_[std::size_t(rank) * words_ + w]);
        for (int r = 0; r < rows_; ++r) {
            if (r != rank && m.get(r, col))
                for (int w = 0; w < words_; ++w)
                    m.bits_[std::size_t(r) * words_ + w] ^=
                        m.bits_[std::size_t(rank) * words_ + w];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<bool>> Z2Matrix::nullspace() const {
    Z2Matrix m = *this;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int pivot = -1;
        for (int r = row; r < rows_; ++r) {
            if (m.get(r, col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            continue;
        for (int w = 0; w < words_; ++w)
            std::swap(m.bits_[std::size_t(pivot) * words_ + w],
                      m.bits_[std::size_t(row) * words_ + w]);
        for (int r = 0; r < rows_; ++r) {
            if (r != row && m.get(r, col))
                for (int w = 0; w < words_; ++w)
                    m.bits_[std::size_t(r) * words_ + w] ^=
                        m.bits_[std::size_t(row) * words_ + w];
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(std::size_t(cols_), false);
    for (int c : pivot_col)
        is_pivot[std::size_t(c)] = true;

    std::vector<std::vector<bool>> basis;
    for (int freec = 0; freec < cols_; ++freec) {
        if (is_pivot[std::size_t(freec)])
            continue;
        std::vector<bool> v(std::size_t(cols_), false);
        v[std::size_t(freec)] = true;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) {
            if (m.get(int(r), freec))
                v[std::size_t(pivot_col[r])] = true;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace mvdp
