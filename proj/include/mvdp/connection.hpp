#pragma once

#include <optional>
#include <vector>

#include "mvdp/manifold.hpp"

namespace mvdp {

enum class ConnectionKind { Homoclinic, HeteroclinicUpper, HeteroclinicLower };

const char* to_string(ConnectionKind k);

/// Resolved shooting geometry for one connection kind: which saddle fires
/// which unstable side, which stable branch receives, and the transversal on
/// which the splitting is measured.
struct GapGeometry {
    EquilibriumId source = EquilibriumId::E1;
    BranchSide unstable_side = BranchSide::Plus;
    EquilibriumId target = EquilibriumId::E1;
    BranchSide stable_side = BranchSide::Plus;
    Section section;
};

struct GapOptions {
    double tol = 1e-9;
    double seed_offset = 1e-6;
    double t_budget = 400.0;
    std::optional<GapGeometry> geometry; // override the default side/section choice
};

struct ConnectionGap {
    double value = 0.0; // positive: unstable branch passes above the stable branch
    ConnectionKind kind = ConnectionKind::Homoclinic;
    State unstable_hit;
    State stable_hit;
};

/// Default geometry for a connection kind at the given parameters.
/// Homoclinic: loop at E1 around the origin, measured on the vertical line
/// x = 0 in the lower half plane. Heteroclinic (requires sign(d) != sign(e)):
/// measured on the vertical line midway between the saddles; the upper
/// connection runs left-to-right, the lower one right-to-left.
GapGeometry default_gap_geometry(const SystemParams& p, ConnectionKind kind);

/// Signed splitting distance between the shot unstable branch and the target
/// stable branch on the crossing section. Throws NumericalError ("no
/// crossing") when either branch misses the section within budget.
ConnectionGap connection_gap(const SystemParams& p, ConnectionKind kind,
                             const GapOptions& opts = {});

struct BifurcationBracket {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    double gap_lo = 0.0;
    double gap_hi = 0.0;
    double refined_theta = 0.0;
    ConnectionKind kind = ConnectionKind::Homoclinic;
};

/// Bisection on theta between endpoints with opposite gap signs, down to
/// width tol_theta. d and e are fixed by `family`; its theta is ignored.
BifurcationBracket bisect_bifurcation(const SystemParams& family, double theta_lo,
                                      double theta_hi, ConnectionKind kind,
                                      double tol_theta = 1e-4,
                                      const GapOptions& opts = {});

struct SweepOptions {
    GapOptions gap;
    double tol_theta = 1e-4;
    int threads = 0; // 0: hardware concurrency
};

/// Scans [theta_lo, theta_hi] at the given step for sign changes of the gap
/// and bisects each. Samples where the gap is undefined are skipped.
std::vector<BifurcationBracket> sweep_bifurcations(const SystemParams& family,
                                                   double theta_lo, double theta_hi,
                                                   double step, ConnectionKind kind,
                                                   const SweepOptions& opts = {});

} // namespace mvdp
