#pragma once

#include <optional>

#include "mvdp/integrate.hpp"

namespace mvdp {

enum class ManifoldKind { Unstable, Stable };
enum class BranchSide { Plus, Minus };

struct ManifoldBranch {
    State saddle;
    ManifoldKind kind = ManifoldKind::Unstable;
    BranchSide side = BranchSide::Plus;
    double seed_offset = 1e-6;
    Trajectory path;
};

struct BranchOptions {
    double tol = 1e-9;
    double t_budget = 400.0;
    std::optional<Section> section;
    double section_skip_time = 1e-3;
};

/// Shoots one side of a saddle's invariant manifold from a seed displaced by
/// seed_offset along the corresponding unit eigenvector (Plus = positive x
/// component). Unstable branches run forward in time, stable branches
/// backward. seed_offset must lie in [1e-7, 1e-4].
ManifoldBranch manifold_branch(const SystemParams& p, EquilibriumId which,
                               ManifoldKind kind, BranchSide side,
                               double seed_offset = 1e-6,
                               const BranchOptions& opts = {});

} // namespace mvdp
