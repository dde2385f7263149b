#include "mvdp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace mvdp {

const char* to_string(EquilibriumId id) {
    switch (id) {
    case EquilibriumId::E0: return "E0";
    case EquilibriumId::E1: return "E1";
    case EquilibriumId::E2: return "E2";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
    case Stability::Sink: return "sink";
    case Stability::Source: return "source";
    case Stability::Saddle: return "saddle";
    case Stability::WeakSink: return "weak-sink";
    case Stability::Degenerate: return "degenerate";
    }
    return "?";
}

State vector_field(const SystemParams& p, const State& s) {
    const double cubic = s.x * (s.x + p.d) * (s.x + p.e) / (p.d * p.e);
    return State{s.y, -(s.x * s.x - p.theta) * s.y - cubic};
}

Mat2 jacobian(const SystemParams& p, const State& s) {
    const double x = s.x, y = s.y;
    const double dcubic =
        ((x + p.d) * (x + p.e) + x * (x + p.e) + x * (x + p.d)) / (p.d * p.e);
    return Mat2{0.0, 1.0, -2.0 * x * y - dcubic, p.theta - x * x};
}

std::array<State, 3> equilibria(const SystemParams& p) {
    return {State{0.0, 0.0}, State{-p.d, 0.0}, State{-p.e, 0.0}};
}

State equilibrium(const SystemParams& p, EquilibriumId id) {
    switch (id) {
    case EquilibriumId::E0: return State{0.0, 0.0};
    case EquilibriumId::E1: return State{-p.d, 0.0};
    case EquilibriumId::E2: return State{-p.e, 0.0};
    }
    throw std::logic_error("unknown equilibrium id");
}

namespace {

// Roots of lambda^2 - tr*lambda - a = 0, the characteristic polynomial of
// [[0, 1], [a, tr]]. Exact discriminant sign test; a repeated real root is
// reported when the discriminant is exactly zero.
SpectralData spectral_from(double tr, double a) {
    const double disc = tr * tr + 4.0 * a;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return SpectralData{{(tr - s) / 2.0, 0.0}, {(tr + s) / 2.0, 0.0}};
    }
    const double w = std::sqrt(-disc) / 2.0;
    return SpectralData{{tr / 2.0, -w}, {tr / 2.0, w}};
}

} // namespace

SpectralData eigenvalues_at(const SystemParams& p, EquilibriumId id) {
    switch (id) {
    case EquilibriumId::E0: return spectral_from(p.theta, -1.0);
    case EquilibriumId::E1: return spectral_from(p.theta - p.d * p.d, (p.e - p.d) / p.e);
    case EquilibriumId::E2: return spectral_from(p.theta - p.e * p.e, (p.d - p.e) / p.d);
    }
    throw std::logic_error("unknown equilibrium id");
}

std::pair<SpectralData, Classification> classify(const SystemParams& p, EquilibriumId id) {
    const SpectralData ev = eigenvalues_at(p, id);
    Classification c;
    switch (id) {
    case EquilibriumId::E0:
        if (p.theta > 0.0)
            c.kind = Stability::Source;
        else if (p.theta < 0.0)
            c.kind = Stability::Sink;
        else
            c.kind = Stability::WeakSink; // L = -1 < 0 at theta = 0
        break;
    case EquilibriumId::E1:
        if (p.theta == p.d * p.d) {
            c.kind = Stability::Degenerate;
            c.degeneracy = "theta = d^2";
        } else {
            c.kind = Stability::Saddle;
        }
        break;
    case EquilibriumId::E2:
        if (std::signbit(p.d) != std::signbit(p.e)) {
            c.kind = Stability::Saddle;
        } else if (p.theta == p.e * p.e) {
            c.kind = Stability::Degenerate;
            c.degeneracy = "theta = e^2";
        } else {
            c.kind = (p.theta < p.e * p.e) ? Stability::Sink : Stability::Source;
        }
        break;
    }
    return {ev, c};
}

std::pair<NormalFormCoefficients, double> lyapunov_coefficient(const SystemParams& p) {
    if (p.theta != 0.0)
        throw std::invalid_argument("lyapunov_coefficient requires theta = 0");

    NormalFormCoefficients c;
    c.nu[2][0] = -(p.d + p.e) / (p.d * p.e);
    c.nu[3][0] = -1.0 / (p.d * p.e);
    c.nu[2][1] = -1.0;

    const auto& mu = c.mu;
    const auto& nu = c.nu;
    const double L = 3.0 * mu[3][0] + mu[1][2] + nu[2][1] + 3.0 * nu[0][3]
                     - mu[2][0] * mu[1][1] + nu[1][1] * nu[0][2]
                     - 2.0 * mu[0][2] * nu[0][2] - mu[0][2] * mu[1][1]
                     + 2.0 * mu[2][0] * nu[2][0] + nu[1][1] * nu[2][0];
    return {c, L};
}

GradedIndex conley_index_of(InvariantKind kind) {
    GradedIndex g;
    switch (kind) {
    case InvariantKind::Sink: g.ranks = {1, 0, 0}; break;
    case InvariantKind::Saddle: g.ranks = {0, 1, 0}; break;
    case InvariantKind::Source: g.ranks = {0, 0, 1}; break;
    case InvariantKind::StableCycle: g.ranks = {1, 1, 0}; break;
    }
    return g;
}

GradedIndex conley_index_of(const Classification& c) {
    switch (c.kind) {
    case Stability::Sink: return conley_index_of(InvariantKind::Sink);
    case Stability::Saddle: return conley_index_of(InvariantKind::Saddle);
    case Stability::Source: return conley_index_of(InvariantKind::Source);
    default:
        throw std::invalid_argument(
            "non-hyperbolic: Conley index by continuation not assigned");
    }
}

State saddle_eigvec(const SystemParams& p, EquilibriumId id, bool unstable) {
    const auto [ev, cls] = classify(p, id);
    if (cls.kind != Stability::Saddle)
        throw std::invalid_argument(std::string(to_string(id)) +
                                    " does not classify as a saddle");
    const double lambda = unstable ? ev.lambda2.real() : ev.lambda1.real();
    const double n = std::hypot(1.0, lambda);
    return State{1.0 / n, lambda / n};
}

} // namespace mvdp
