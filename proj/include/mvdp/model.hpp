#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "mvdp/params.hpp"

namespace mvdp {

enum class EquilibriumId { E0, E1, E2 };

constexpr std::array<EquilibriumId, 3> all_equilibria = {EquilibriumId::E0, EquilibriumId::E1,
                                                         EquilibriumId::E2};

const char* to_string(EquilibriumId id);

/// Row-major 2x2 real matrix.
struct Mat2 {
    double a11 = 0, a12 = 0;
    double a21 = 0, a22 = 0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Eigenvalue pair, ordered so lambda1 has the smaller real part
/// (lambda1 <= lambda2 for a real pair). Closed under conjugation.
struct SpectralData {
    std::complex<double> lambda1;
    std::complex<double> lambda2;

    bool is_real_pair() const { return lambda1.imag() == 0.0 && lambda2.imag() == 0.0; }
};

enum class Stability { Sink, Source, Saddle, WeakSink, Degenerate };

const char* to_string(Stability s);

struct Classification {
    Stability kind = Stability::Degenerate;
    std::string degeneracy; // violated condition, set only for Degenerate
};

/// Z2 Conley index: rank (0 or 1 here) per homology degree q in {0,1,2}.
struct GradedIndex {
    std::array<int, 3> ranks{0, 0, 0};

    int rank(int q) const { return (q >= 0 && q < 3) ? ranks[std::size_t(q)] : 0; }
    int total() const { return ranks[0] + ranks[1] + ranks[2]; }
    bool operator==(const GradedIndex&) const = default;
};

enum class InvariantKind { Sink, Saddle, Source, StableCycle };

/// Cubic-restoring-force coefficients of the theta = 0 normal form
///   x' = y + sum mu_ij x^i y^j,   y' = -x + sum nu_ij x^i y^j
/// for i + j in {2, 3}. For this system every mu vanishes.
struct NormalFormCoefficients {
    double mu[4][4] = {};
    double nu[4][4] = {};
};

State vector_field(const SystemParams& p, const State& s);
Mat2 jacobian(const SystemParams& p, const State& s);

std::array<State, 3> equilibria(const SystemParams& p);
State equilibrium(const SystemParams& p, EquilibriumId id);

SpectralData eigenvalues_at(const SystemParams& p, EquilibriumId id);
std::pair<SpectralData, Classification> classify(const SystemParams& p, EquilibriumId id);

/// Normal-form coefficients and the Lyapunov coefficient L at theta = 0.
/// Only nu_{2,1} = -1 survives in the L formula, so L = -1 for every valid (d, e).
std::pair<NormalFormCoefficients, double> lyapunov_coefficient(const SystemParams& p);

GradedIndex conley_index_of(InvariantKind kind);
GradedIndex conley_index_of(const Classification& c);

/// Unit eigenvector (positive x component) of the Jacobian at a saddle,
/// for the positive (unstable = true) or negative eigenvalue.
State saddle_eigvec(const SystemParams& p, EquilibriumId id, bool unstable);

} // namespace mvdp
