#include "mvdp/conley.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mvdp {

namespace {

// Tie-break labels by (length, lexicographic) so "2" < "10" < "pi".
bool label_before(const std::string& a, const std::string& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

int min_degree(const GradedIndex& g) {
    for (int q = 0; q < 3; ++q)
        if (g.rank(q))
            return q;
    return 3;
}

std::string interval_name(const std::vector<std::string>& labels) {
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i)
            s += ",";
        s += labels[i];
    }
    return s + "}";
}

} // namespace

MorseDecomposition MorseDecomposition::make(
    Poset poset, const std::map<std::string, GradedIndex>& indices,
    const std::map<std::string, std::string>& descriptions) {
    MorseDecomposition m;
    m.poset = std::move(poset);
    m.index.resize(std::size_t(m.poset.size()));
    m.description.resize(std::size_t(m.poset.size()));
    for (int i = 0; i < m.poset.size(); ++i) {
        const auto it = indices.find(m.poset.label(i));
        if (it == indices.end())
            throw std::invalid_argument("morse decomposition: element '" +
                                        m.poset.label(i) + "' has no index");
        m.index[std::size_t(i)] = it->second;
        const auto dit = descriptions.find(m.poset.label(i));
        if (dit != descriptions.end())
            m.description[std::size_t(i)] = dit->second;
    }
    for (const auto& [label, idx] : indices) {
        (void)idx;
        if (m.poset.index_of(label) < 0)
            throw std::invalid_argument("morse decomposition: index given for unknown element '" +
                                        label + "'");
    }
    return m;
}

std::vector<MorseDecomposition::BasisVec> MorseDecomposition::basis() const {
    std::vector<BasisVec> out;
    for (int i = 0; i < poset.size(); ++i)
        for (int q = 0; q < 3; ++q)
            for (int r = 0; r < index[std::size_t(i)].rank(q); ++r)
                out.push_back({i, q});
    std::stable_sort(out.begin(), out.end(), [&](const BasisVec& a, const BasisVec& b) {
        if (a.q != b.q)
            return a.q < b.q;
        const int ma = min_degree(index[std::size_t(a.elem)]);
        const int mb = min_degree(index[std::size_t(b.elem)]);
        if (ma != mb)
            return ma < mb;
        return label_before(poset.label(a.elem), poset.label(b.elem));
    });
    return out;
}

int MorseDecomposition::total_dimension() const {
    int n = 0;
    for (const auto& g : index)
        n += g.total();
    return n;
}

std::string MorseDecomposition::basis_label(const BasisVec& v) const {
    return "H" + std::to_string(v.q) + "(" + poset.label(v.elem) + ")";
}

GradedZ2Map::GradedZ2Map(int degree, MorseDecomposition target, MorseDecomposition source)
    : degree_(degree), target_(std::move(target)), source_(std::move(source)),
      tbasis_(target_.basis()), sbasis_(source_.basis()),
      mat_(int(tbasis_.size()), int(sbasis_.size())) {}

int GradedZ2Map::basis_pos(const std::vector<MorseDecomposition::BasisVec>& basis,
                           const MorseDecomposition& m, const std::string& label,
                           int q) const {
    const int elem = m.poset.index_of(label);
    if (elem < 0)
        return -1;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].elem == elem && basis[i].q == q)
            return int(i);
    return -1;
}

bool GradedZ2Map::structural(const std::string& target_label,
                             const std::string& source_label, int q_source) const {
    return basis_pos(sbasis_, source_, source_label, q_source) >= 0 &&
           basis_pos(tbasis_, target_, target_label, q_source + degree_) >= 0;
}

void GradedZ2Map::set(const std::string& target_label, const std::string& source_label,
                      int q_source, bool value) {
    const int col = basis_pos(sbasis_, source_, source_label, q_source);
    const int row = basis_pos(tbasis_, target_, target_label, q_source + degree_);
    if (col < 0 || row < 0)
        throw std::invalid_argument("entry H" + std::to_string(q_source + degree_) + "(" +
                                    target_label + ") <- H" + std::to_string(q_source) +
                                    "(" + source_label + ") is not structurally allowed");
    mat_.set(row, col, value);
}

bool GradedZ2Map::get(const std::string& target_label, const std::string& source_label,
                      int q_source) const {
    const int col = basis_pos(sbasis_, source_, source_label, q_source);
    const int row = basis_pos(tbasis_, target_, target_label, q_source + degree_);
    if (col < 0 || row < 0)
        return false;
    return mat_.get(row, col);
}

std::vector<GradedZ2Map::Entry> GradedZ2Map::entries() const {
    std::vector<Entry> out;
    for (std::size_t r = 0; r < tbasis_.size(); ++r)
        for (std::size_t c = 0; c < sbasis_.size(); ++c)
            if (mat_.get(int(r), int(c)))
                out.push_back({target_.poset.label(tbasis_[r].elem),
                               source_.poset.label(sbasis_[c].elem), sbasis_[c].q, true});
    return out;
}

std::string GradedZ2Map::to_text() const {
    std::vector<std::string> col_labels, row_labels;
    for (const auto& v : sbasis_)
        col_labels.push_back(source_.basis_label(v));
    for (const auto& v : tbasis_)
        row_labels.push_back(target_.basis_label(v));

    std::size_t roww = 0;
    for (const auto& s : row_labels)
        roww = std::max(roww, s.size());

    std::ostringstream os;
    os << std::string(roww + 2, ' ');
    for (const auto& s : col_labels)
        os << ' ' << s;
    os << '\n';
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        os << row_labels[r] << std::string(roww - row_labels[r].size(), ' ') << "  ";
        for (std::size_t c = 0; c < col_labels.size(); ++c) {
            const std::size_t w = col_labels[c].size();
            std::string cell(w, ' ');
            cell[w / 2] = mat_.get(int(r), int(c)) ? '1' : '0';
            os << ' ' << cell;
        }
        os << '\n';
    }
    return os.str();
}

GradedIndex homology_of_interval(const GradedZ2Map& D, const MorseDecomposition& M,
                                 const std::vector<std::string>& interval) {
    std::vector<int> idx;
    for (const auto& label : interval) {
        const int i = M.poset.index_of(label);
        if (i < 0)
            throw std::invalid_argument("interval uses unknown element '" + label + "'");
        idx.push_back(i);
    }
    if (!M.poset.is_interval(idx))
        throw std::invalid_argument("subset " + interval_name(interval) + " is not an interval");

    const auto& tb = D.target_basis();
    const auto& sb = D.source_basis();
    std::vector<char> in(std::size_t(M.poset.size()), 0);
    for (int i : idx)
        in[std::size_t(i)] = 1;

    // positions of interval basis vectors, per degree
    std::vector<std::vector<int>> cols_by_q(4), rows_by_q(4);
    for (std::size_t c = 0; c < sb.size(); ++c)
        if (in[std::size_t(sb[c].elem)])
            cols_by_q[std::size_t(sb[c].q)].push_back(int(c));
    for (std::size_t r = 0; r < tb.size(); ++r)
        if (in[std::size_t(tb[r].elem)])
            rows_by_q[std::size_t(tb[r].q)].push_back(int(r));

    // rank of the degree-q block of D restricted to the interval
    auto block_rank = [&](int q) -> int {
        if (q <= 0 || q > 3)
            return 0;
        const auto& cols = cols_by_q[std::size_t(q)];
        const auto& rows = rows_by_q[std::size_t(q - 1)];
        if (cols.empty() || rows.empty())
            return 0;
        Z2Matrix b(int(rows.size()), int(cols.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c)
                b.set(int(r), int(c), D.get_raw(rows[r], cols[c]));
        return b.rank();
    };

    GradedIndex out;
    for (int q = 0; q < 3; ++q) {
        const int n_q = int(cols_by_q[std::size_t(q)].size());
        const int ch = n_q - block_rank(q) - block_rank(q + 1);
        if (ch < 0)
            throw std::invalid_argument("image not contained in kernel on interval " +
                                        interval_name(interval));
        out.ranks[std::size_t(q)] = ch;
    }
    return out;
}

ValidationReport validate_connection_matrix(
    const GradedZ2Map& D, const MorseDecomposition& M,
    const std::vector<std::pair<std::vector<std::string>, GradedIndex>>& prescribed) {
    if (D.degree() != -1)
        throw std::invalid_argument("connection matrix must have degree -1");

    ValidationReport rep;
    const auto& tb = D.target_basis();
    const auto& sb = D.source_basis();

    // (a) strict upper triangularity w.r.t. the order
    for (std::size_t r = 0; r < tb.size(); ++r) {
        for (std::size_t c = 0; c < sb.size(); ++c) {
            if (!D.get_raw(int(r), int(c)))
                continue;
            const std::string t = D.target().poset.label(tb[r].elem);
            const std::string s = D.source().poset.label(sb[c].elem);
            if (!M.poset.less(t, s)) {
                rep.valid = false;
                rep.violations.push_back("axiom (a): entry H" + std::to_string(tb[r].q) +
                                         "(" + t + ") <- H" + std::to_string(sb[c].q) +
                                         "(" + s + ") without " + t + " < " + s);
            }
        }
    }

    // (b) boundary map: D^2 = 0
    const Z2Matrix sq = D.matrix() * D.matrix();
    if (!sq.is_zero()) {
        rep.valid = false;
        for (int r = 0; r < sq.rows(); ++r)
            for (int c = 0; c < sq.cols(); ++c)
                if (sq.get(r, c))
                    rep.violations.push_back(
                        "axiom (b): D^2 has entry " + M.basis_label(tb[std::size_t(r)]) +
                        " <- " + M.basis_label(sb[std::size_t(c)]));
    }
    if (!rep.valid)
        return rep;

    // (c) interval homology: singletons against their own index, further
    // intervals against prescribed values; everything reported.
    auto check_interval = [&](const std::vector<std::string>& labels,
                              const GradedIndex* expect) {
        GradedIndex got;
        try {
            got = homology_of_interval(D, M, labels);
        } catch (const std::invalid_argument& ex) {
            rep.valid = false;
            rep.violations.push_back(std::string("axiom (c): ") + ex.what());
            return;
        }
        rep.interval_homology.emplace_back(labels, got);
        if (expect && !(got == *expect)) {
            rep.valid = false;
            rep.violations.push_back("axiom (c): interval " + interval_name(labels) +
                                     " has homology (" + std::to_string(got.ranks[0]) + "," +
                                     std::to_string(got.ranks[1]) + "," +
                                     std::to_string(got.ranks[2]) + ") != prescribed");
        }
    };

    if (M.poset.size() <= 12) {
        for (const auto& iv : M.poset.intervals()) {
            std::vector<std::string> labels;
            for (int i : iv)
                labels.push_back(M.poset.label(i));
            const GradedIndex* expect = nullptr;
            if (labels.size() == 1)
                expect = &M.index[std::size_t(M.poset.index_of(labels[0]))];
            for (const auto& [plabels, pindex] : prescribed) {
                if (plabels == labels)
                    expect = &pindex;
            }
            check_interval(labels, expect);
        }
    } else {
        for (int i = 0; i < M.poset.size(); ++i)
            check_interval({M.poset.label(i)}, &M.index[std::size_t(i)]);
        for (const auto& [plabels, pindex] : prescribed)
            check_interval(plabels, &pindex);
    }
    return rep;
}

int mod2_connection_count(long long k) {
    if (k < 0)
        throw std::invalid_argument("connection count must be nonnegative");
    return int(k & 1);
}

std::vector<GradedZ2Map> enumerate_connection_matrices(const MorseDecomposition& M) {
    if (M.total_dimension() > 16)
        throw std::invalid_argument(
            "size bound exceeded: total index dimension > 16");

    GradedZ2Map zero = GradedZ2Map::connection(M);
    const auto& tb = zero.target_basis();
    const auto& sb = zero.source_basis();

    std::vector<std::pair<int, int>> slots; // (row, col) of admissible entries
    for (std::size_t r = 0; r < tb.size(); ++r)
        for (std::size_t c = 0; c < sb.size(); ++c)
            if (tb[r].q == sb[c].q - 1 && M.poset.less(tb[r].elem, sb[c].elem))
                slots.emplace_back(int(r), int(c));

    if (slots.size() > 20)
        throw std::invalid_argument("size bound exceeded: more than 20 admissible entries");

    std::vector<GradedZ2Map> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
        GradedZ2Map cand = zero;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                cand.set_raw(slots[i].first, slots[i].second, true);
        const Z2Matrix sq = cand.matrix() * cand.matrix();
        if (sq.is_zero())
            out.push_back(std::move(cand));
    }
    return out;
}

TransitionSolution solve_transition_matrices(
    const GradedZ2Map& D0, const GradedZ2Map& D1, const MorseDecomposition& M0,
    const MorseDecomposition& M1, const std::vector<TransitionConstraint>& constraints) {
    GradedZ2Map T0(0, M0, M1);
    const auto& rb = T0.target_basis(); // M0 basis
    const auto& cb = T0.source_basis(); // M1 basis

    // Variables: structural entries of T, row-major.
    std::vector<std::pair<int, int>> vars;
    std::vector<std::vector<int>> var_at(rb.size(), std::vector<int>(cb.size(), -1));
    for (std::size_t r = 0; r < rb.size(); ++r)
        for (std::size_t c = 0; c < cb.size(); ++c)
            if (rb[r].q == cb[c].q) {
                var_at[r][c] = int(vars.size());
                vars.emplace_back(int(r), int(c));
            }
    const int nvars = int(vars.size());

    // Equations of D0*T + T*D1 = 0, one per (target a in M0, source j in M1)
    // with deg(a) = deg(j) - 1, plus one equation per constraint.
    std::vector<std::vector<bool>> rows; // nvars + 1 columns (augmented)
    auto new_row = [&]() -> std::vector<bool>& {
        rows.emplace_back(std::size_t(nvars) + 1, false);
        return rows.back();
    };

    for (std::size_t a = 0; a < rb.size(); ++a) {
        for (std::size_t j = 0; j < cb.size(); ++j) {
            if (rb[a].q != cb[j].q - 1)
                continue;
            auto& row = new_row();
            bool nontrivial = false;
            for (std::size_t k = 0; k < rb.size(); ++k) { // D0[a,k] * T[k,j]
                if (rb[k].q == cb[j].q && D0.get_raw(int(a), int(k))) {
                    row[std::size_t(var_at[k][j])] = !row[std::size_t(var_at[k][j])];
                    nontrivial = true;
                }
            }
            for (std::size_t m = 0; m < cb.size(); ++m) { // T[a,m] * D1[m,j]
                if (cb[m].q == rb[a].q && D1.get_raw(int(m), int(j))) {
                    row[std::size_t(var_at[a][m])] = !row[std::size_t(var_at[a][m])];
                    nontrivial = true;
                }
            }
            if (!nontrivial)
                rows.pop_back();
        }
    }

    for (const auto& c : constraints) {
        const int row_b = M0.poset.index_of(c.target);
        const int col_b = M1.poset.index_of(c.source);
        int vr = -1, vc = -1;
        for (std::size_t r = 0; r < rb.size(); ++r)
            if (rb[r].elem == row_b && rb[r].q == c.q)
                vr = int(r);
        for (std::size_t cc = 0; cc < cb.size(); ++cc)
            if (cb[cc].elem == col_b && cb[cc].q == c.q)
                vc = int(cc);
        if (vr < 0 || vc < 0 || var_at[std::size_t(vr)][std::size_t(vc)] < 0)
            throw std::invalid_argument("constraint on T(" + c.target + "," + c.source +
                                        ") at degree " + std::to_string(c.q) +
                                        " is not structurally allowed");
        auto& row = new_row();
        row[std::size_t(var_at[std::size_t(vr)][std::size_t(vc)])] = true;
        row[std::size_t(nvars)] = c.kind == TransitionConstraint::Kind::Iso;
    }

    // Gauss-Jordan over GF(2) on the augmented system.
    std::vector<int> pivot_of_col(std::size_t(nvars), -1);
    int rank = 0;
    for (int col = 0; col < nvars && rank < int(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[std::size_t(r)][std::size_t(col)]) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[std::size_t(pivot)], rows[std::size_t(rank)]);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r != rank && rows[std::size_t(r)][std::size_t(col)])
                for (int w = 0; w <= nvars; ++w)
                    rows[std::size_t(r)][std::size_t(w)] =
                        rows[std::size_t(r)][std::size_t(w)] ^
                        rows[std::size_t(rank)][std::size_t(w)];
        }
        pivot_of_col[std::size_t(col)] = rank;
        ++rank;
    }
    for (int r = rank; r < int(rows.size()); ++r)
        if (rows[std::size_t(r)][std::size_t(nvars)])
            throw NumericalError("no transition matrix exists: inconsistent constraints");

    // Particular solution (free variables zero) and nullspace basis.
    std::vector<bool> particular(std::size_t(nvars), false);
    for (int col = 0; col < nvars; ++col)
        if (pivot_of_col[std::size_t(col)] >= 0)
            particular[std::size_t(col)] =
                rows[std::size_t(pivot_of_col[std::size_t(col)])][std::size_t(nvars)];

    std::vector<std::vector<bool>> null_basis;
    for (int freec = 0; freec < nvars; ++freec) {
        if (pivot_of_col[std::size_t(freec)] >= 0)
            continue;
        std::vector<bool> v(std::size_t(nvars), false);
        v[std::size_t(freec)] = true;
        for (int col = 0; col < nvars; ++col) {
            const int pr = pivot_of_col[std::size_t(col)];
            if (pr >= 0 && rows[std::size_t(pr)][std::size_t(freec)])
                v[std::size_t(col)] = true;
        }
        null_basis.push_back(std::move(v));
    }

    TransitionSolution sol;
    for (int v = 0; v < nvars; ++v) {
        bool varies = false;
        for (const auto& nb : null_basis)
            varies = varies || nb[std::size_t(v)];
        if (!varies) {
            const auto [r, c] = vars[std::size_t(v)];
            sol.forced.push_back({M0.poset.label(rb[std::size_t(r)].elem),
                                  M1.poset.label(cb[std::size_t(c)].elem),
                                  cb[std::size_t(c)].q, particular[std::size_t(v)]});
        }
    }

    if (null_basis.size() > 12)
        throw std::invalid_argument("solution space too large to enumerate");
    const std::uint64_t count = std::uint64_t(1) << null_basis.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<bool> x = particular;
        for (std::size_t b = 0; b < null_basis.size(); ++b)
            if (mask & (std::uint64_t(1) << b))
                for (int v = 0; v < nvars; ++v)
                    x[std::size_t(v)] = x[std::size_t(v)] ^ null_basis[b][std::size_t(v)];
        GradedZ2Map T(0, M0, M1);
        for (int v = 0; v < nvars; ++v)
            if (x[std::size_t(v)])
                T.set_raw(vars[std::size_t(v)].first, vars[std::size_t(v)].second, true);
        sol.solutions.push_back(std::move(T));
    }
    return sol;
}

std::string Certificate::text() const {
    char buf[128];
    std::string range;
    if (theta_bracket) {
        std::snprintf(buf, sizeof buf, " for some theta* in (%g, %g)", theta_bracket->first,
                      theta_bracket->second);
        range = buf;
    }
    if (kind == Kind::Heteroclinic)
        return "C(M(" + source + "),M(" + target + ")) != {}: connecting orbit from M(" +
               source + ") to M(" + target + ")" + range;
    return "generalized homoclinic orbit to M(" + morse_set + ")" + range;
}

std::vector<Certificate> infer_bifurcation(const std::vector<ForcedEntry>& forced,
                                           const MorseDecomposition& M0,
                                           const MorseDecomposition& M1,
                                           std::optional<std::pair<double, double>> theta_bracket) {
    std::vector<Certificate> out;
    for (const auto& f : forced) {
        if (f.target != f.source && f.value) {
            Certificate c;
            c.kind = Certificate::Kind::Heteroclinic;
            c.source = f.source;
            c.target = f.target;
            c.theta_bracket = theta_bracket;
            out.push_back(std::move(c));
        } else if (f.target == f.source && !f.value && M0.poset.index_of(f.target) >= 0 &&
                   M1.poset.index_of(f.target) >= 0) {
            Certificate c;
            c.kind = Certificate::Kind::GeneralizedHomoclinic;
            c.morse_set = f.target;
            c.theta_bracket = theta_bracket;
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace mvdp
