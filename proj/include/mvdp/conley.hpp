#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvdp/model.hpp"
#include "mvdp/poset.hpp"
#include "mvdp/z2.hpp"

namespace mvdp {

/// Morse sets over a strict partial order, each carrying its graded Z2
/// Conley index and an optional human-readable description.
struct MorseDecomposition {
    Poset poset;
    std::vector<GradedIndex> index;       // by poset element position
    std::vector<std::string> description; // same indexing, may be empty strings

    struct BasisVec {
        int elem; // poset element position
        int q;    // homology degree
    };

    static MorseDecomposition make(Poset poset,
                                   const std::map<std::string, GradedIndex>& indices,
                                   const std::map<std::string, std::string>& descriptions = {});

    /// Basis of the direct sum of the indices: ascending degree, then
    /// cycle-like sets (lower minimum degree) first, then by label. This is
    /// the order used for printed matrices.
    std::vector<BasisVec> basis() const;
    int total_dimension() const;
    std::string basis_label(const BasisVec& v) const;
};

/// Degree-tagged matrix over Z2 between the summed indices of two Morse
/// decompositions (rows: target, columns: source). Connection matrices have
/// degree -1 and a shared decomposition on both sides; transition matrices
/// have degree 0 between two decompositions. Entries exist only where source
/// rank at q and target rank at q + degree are both nonzero.
class GradedZ2Map {
public:
    struct Entry {
        std::string target;
        std::string source;
        int q; // source degree
        bool value;
    };

    GradedZ2Map(int degree, MorseDecomposition target, MorseDecomposition source);

    static GradedZ2Map connection(MorseDecomposition m) {
        MorseDecomposition copy = m;
        return GradedZ2Map(-1, std::move(copy), std::move(m));
    }

    int degree() const { return degree_; }
    const MorseDecomposition& target() const { return target_; }
    const MorseDecomposition& source() const { return source_; }

    bool structural(const std::string& target_label, const std::string& source_label,
                    int q_source) const;
    void set(const std::string& target_label, const std::string& source_label,
             int q_source, bool value);
    bool get(const std::string& target_label, const std::string& source_label,
             int q_source) const;

    std::vector<Entry> entries() const; // nonzero entries, deterministic order
    const Z2Matrix& matrix() const { return mat_; }

    /// Row/column labelled text rendering (entries printed as 0/1).
    std::string to_text() const;

    bool operator==(const GradedZ2Map& rhs) const { return mat_ == rhs.mat_; }

    // Exposed for solvers/tests.
    const std::vector<MorseDecomposition::BasisVec>& target_basis() const { return tbasis_; }
    const std::vector<MorseDecomposition::BasisVec>& source_basis() const { return sbasis_; }
    void set_raw(int row, int col, bool v) { mat_.set(row, col, v); }
    bool get_raw(int row, int col) const { return mat_.get(row, col); }

private:
    int basis_pos(const std::vector<MorseDecomposition::BasisVec>& basis,
                  const MorseDecomposition& m, const std::string& label, int q) const;

    int degree_;
    MorseDecomposition target_;
    MorseDecomposition source_;
    std::vector<MorseDecomposition::BasisVec> tbasis_;
    std::vector<MorseDecomposition::BasisVec> sbasis_;
    Z2Matrix mat_;
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    // Homology computed for every interval (reported, and checked against
    // prescribed values where supplied).
    std::vector<std::pair<std::vector<std::string>, GradedIndex>> interval_homology;
};

/// Checks the connection-matrix axioms for D against M:
///  (a) nonzero blocks only strictly above the order (target < source),
///  (b) D^2 = 0 over Z2,
///  (c) interval homology ker/im matches the prescribed indices (singletons
///      always; further intervals when supplied via `prescribed`).
ValidationReport validate_connection_matrix(
    const GradedZ2Map& D, const MorseDecomposition& M,
    const std::vector<std::pair<std::vector<std::string>, GradedIndex>>& prescribed = {});

/// Z2 ranks of ker/im of D restricted to an interval, per homology degree.
GradedIndex homology_of_interval(const GradedZ2Map& D, const MorseDecomposition& M,
                                 const std::vector<std::string>& interval);

/// Parity of a transverse connecting-orbit count.
int mod2_connection_count(long long k);

/// All degree -1 maps admissible for M (strictly upper triangular w.r.t. the
/// order, D^2 = 0), in deterministic order. Bounded: total index dimension
/// <= 16 and at most 20 structurally allowed entries.
std::vector<GradedZ2Map> enumerate_connection_matrices(const MorseDecomposition& M);

struct TransitionConstraint {
    enum class Kind { Zero, Iso };
    Kind kind = Kind::Iso;
    std::string target; // element in the "before" decomposition
    std::string source; // element in the "after" decomposition
    int q = 0;
};

struct ForcedEntry {
    std::string target;
    std::string source;
    int q;
    bool value;
};

struct TransitionSolution {
    std::vector<GradedZ2Map> solutions; // all solutions when enumerable
    std::vector<ForcedEntry> forced;    // entries constant across the solution set
};

/// Solves D0*T + T*D1 = 0 over Z2 for degree-0 maps T from the summed index
/// of M1 into the summed index of M0, subject to the given entry constraints.
/// Throws when the constraints are inconsistent.
TransitionSolution solve_transition_matrices(const GradedZ2Map& D0, const GradedZ2Map& D1,
                                             const MorseDecomposition& M0,
                                             const MorseDecomposition& M1,
                                             const std::vector<TransitionConstraint>& constraints);

struct Certificate {
    enum class Kind { Heteroclinic, GeneralizedHomoclinic };
    Kind kind = Kind::Heteroclinic;
    std::string source; // heteroclinic: orbit from source ...
    std::string target; // ... to target
    std::string morse_set; // homoclinic: the set the orbit returns to
    std::optional<std::pair<double, double>> theta_bracket;

    std::string text() const;
};

/// Reads certificates off the forced transition entries: a forced
/// off-diagonal isomorphism between distinct sets witnesses a connecting
/// orbit; a forced zero on the diagonal of a set present on both sides
/// witnesses a generalized homoclinic orbit.
std::vector<Certificate> infer_bifurcation(const std::vector<ForcedEntry>& forced,
                                           const MorseDecomposition& M0,
                                           const MorseDecomposition& M1,
                                           std::optional<std::pair<double, double>> theta_bracket = {});

} // namespace mvdp
