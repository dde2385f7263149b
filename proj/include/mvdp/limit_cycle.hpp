#pragma once

#include <optional>
#include <string>

#include "mvdp/integrate.hpp"

namespace mvdp {

struct LimitCycle {
    State section_point; // on {y = 0, x > 0}
    double period = 0.0;
    Trajectory orbit;    // one period from section_point
};

struct CycleOptions {
    double tol = 1e-9;
    double warmup_time = 400.0;
    int max_secant_iters = 60;
    double fixpoint_tol = 1e-10;
};

struct CycleDetection {
    std::optional<LimitCycle> cycle;
    std::string diagnostic;
};

/// Searches for a stable limit cycle around the origin via the Poincare
/// return map on {y = 0, x > 0}: forward integration to converge near the
/// cycle, then damped secant iteration on P(x) - x. Requires E0 to classify
/// as a source. Absence of a cycle yields an empty result with a diagnostic.
CycleDetection detect_limit_cycle(const SystemParams& p, const CycleOptions& opts = {});

enum class OmegaKind { Equilibrium, Cycle, Escaped, Undetermined };

struct OmegaLimit {
    OmegaKind kind = OmegaKind::Undetermined;
    std::optional<State> equilibrium;
};

/// Classifies the tail of a forward trajectory: near an equilibrium over the
/// last tenth of the samples, recurrent section crossings with converging
/// return distances, or box escape.
OmegaLimit omega_limit_estimate(const SystemParams& p, const Trajectory& traj);

} // namespace mvdp
