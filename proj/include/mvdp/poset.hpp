#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mvdp {

/// Finite strict partial order on labelled elements. Construction takes
/// generating pairs, closes them transitively and rejects any cycle
/// (irreflexivity is checked exhaustively on the closure).
class Poset {
public:
    static Poset make(std::vector<std::string> labels,
                      const std::vector<std::pair<std::string, std::string>>& less_pairs);

    int size() const { return int(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[std::size_t(i)]; }
    int index_of(const std::string& label) const; // -1 if absent

    bool less(int a, int b) const { return less_[std::size_t(a) * labels_.size() + std::size_t(b)]; }
    bool less(const std::string& a, const std::string& b) const;

    /// Order-convexity: a < c < b with a, b in the subset forces c in.
    bool is_interval(const std::vector<int>& subset) const;
    /// Downward closure on top of being an interval.
    bool is_attracting_interval(const std::vector<int>& subset) const;

    /// All intervals (as sorted index vectors), exhaustively over subsets.
    /// Guarded to size() <= 12.
    std::vector<std::vector<int>> intervals() const;

    bool adjacent(int a, int b) const;

private:
    std::vector<std::string> labels_;
    std::vector<char> less_; // row-major adjacency of the strict order
};

} // namespace mvdp
