#include "mvdp/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvdp {

Poset Poset::make(std::vector<std::string> labels,
                  const std::vector<std::pair<std::string, std::string>>& less_pairs) {
    Poset p;
    p.labels_ = std::move(labels);
    const std::size_t n = p.labels_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p.labels_[i] == p.labels_[j])
                throw std::invalid_argument("poset: duplicate label '" + p.labels_[i] + "'");

    p.less_.assign(n * n, 0);
    for (const auto& [a, b] : less_pairs) {
        const int ia = p.index_of(a), ib = p.index_of(b);
        if (ia < 0 || ib < 0)
            throw std::invalid_argument("poset: relation uses unknown label '" +
                                        (ia < 0 ? a : b) + "'");
        p.less_[std::size_t(ia) * n + std::size_t(ib)] = 1;
    }

    // Floyd-Warshall transitive closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (p.less_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (p.less_[k * n + j])
                        p.less_[i * n + j] = 1;

    for (std::size_t i = 0; i < n; ++i)
        if (p.less_[i * n + i])
            throw std::invalid_argument("poset: relation has a cycle through '" +
                                        p.labels_[i] + "'");
    return p;
}

int Poset::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return int(i);
    return -1;
}

bool Poset::less(const std::string& a, const std::string& b) const {
    const int ia = index_of(a), ib = index_of(b);
    if (ia < 0 || ib < 0)
        throw std::invalid_argument("poset: unknown label");
    return less(ia, ib);
}

bool Poset::is_interval(const std::vector<int>& subset) const {
    std::vector<char> in(labels_.size(), 0);
    for (int i : subset) {
        if (i < 0 || i >= size())
            throw std::invalid_argument("poset: subset index out of range");
        in[std::size_t(i)] = 1;
    }
    for (int a : subset)
        for (int b : subset)
            for (int c = 0; c < size(); ++c)
                if (!in[std::size_t(c)] && less(a, c) && less(c, b))
                    return false;
    return true;
}

bool Poset::is_attracting_interval(const std::vector<int>& subset) const {
    if (!is_interval(subset))
        return false;
    std::vector<char> in(labels_.size(), 0);
    for (int i : subset)
        in[std::size_t(i)] = 1;
    for (int a : subset)
        for (int c = 0; c < size(); ++c)
            if (less(c, a) && !in[std::size_t(c)])
                return false;
    return true;
}

std::vector<std::vector<int>> Poset::intervals() const {
    if (size() > 12)
        throw std::invalid_argument("poset: exhaustive interval enumeration limited to 12 elements");
    std::vector<std::vector<int>> out;
    const unsigned n = unsigned(size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (unsigned i = 0; i < n; ++i)
            if (mask & (1u << i))
                subset.push_back(int(i));
        if (is_interval(subset))
            out.push_back(std::move(subset));
    }
    return out;
}

bool Poset::adjacent(int a, int b) const {
    return is_interval({a, b});
}

} // namespace mvdp
