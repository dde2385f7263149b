#pragma once

// Test-only oracles, kept independent of the library's linear algebra:
// interval homology by exhaustive kernel/image enumeration over Z2.

#include <set>
#include <vector>

#include "mvdp/conley.hpp"

namespace oracles {

// Z2 ranks of ker/im per degree for D restricted to an interval, computed by
// enumerating every vector of the graded pieces (no row reduction involved).
inline mvdp::GradedIndex brute_force_interval_homology(const mvdp::GradedZ2Map& D,
                                                       const mvdp::MorseDecomposition& M,
                                                       const std::vector<std::string>& interval) {
    const auto& tb = D.target_basis();
    const auto& sb = D.source_basis();
    std::vector<char> in(std::size_t(M.poset.size()), 0);
    for (const auto& label : interval)
        in[std::size_t(M.poset.index_of(label))] = 1;

    std::vector<std::vector<int>> cols_q(4), rows_q(4);
    for (std::size_t c = 0; c < sb.size(); ++c)
        if (in[std::size_t(sb[c].elem)])
            cols_q[std::size_t(sb[c].q)].push_back(int(c));
    for (std::size_t r = 0; r < tb.size(); ++r)
        if (in[std::size_t(tb[r].elem)])
            rows_q[std::size_t(tb[r].q)].push_back(int(r));

    // image of a degree-q vector (given as a column subset mask) in the
    // degree q-1 rows of the interval
    auto apply = [&](int q, unsigned mask) {
        std::vector<char> out;
        if (q - 1 >= 0)
            out.assign(rows_q[std::size_t(q - 1)].size(), 0);
        const auto& cols = cols_q[std::size_t(q)];
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            if (!(mask & (1u << ci)))
                continue;
            for (std::size_t ri = 0; ri < out.size(); ++ri)
                out[ri] = char(out[ri] ^ D.get_raw(rows_q[std::size_t(q - 1)][ri], cols[ci]));
        }
        return out;
    };

    mvdp::GradedIndex result;
    for (int q = 0; q < 3; ++q) {
        const unsigned n = unsigned(cols_q[std::size_t(q)].size());
        unsigned kernel_count = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            const auto img = apply(q, mask);
            bool zero = true;
            for (char b : img)
                zero = zero && !b;
            if (zero)
                ++kernel_count;
        }
        int ker_dim = 0;
        while ((1u << ker_dim) < kernel_count)
            ++ker_dim;

        const unsigned n_up = unsigned(cols_q[std::size_t(q + 1)].size());
        std::set<std::vector<char>> image;
        for (unsigned mask = 0; mask < (1u << n_up); ++mask)
            image.insert(apply(q + 1, mask));
        int im_dim = 0;
        while ((std::size_t(1) << im_dim) < image.size())
            ++im_dim;

        result.ranks[std::size_t(q)] = ker_dim - im_dim;
    }
    return result;
}

} // namespace oracles
