#include "mvdp/manifold.hpp"

#include <stdexcept>

namespace mvdp {

ManifoldBranch manifold_branch(const SystemParams& p, EquilibriumId which,
                               ManifoldKind kind, BranchSide side, double seed_offset,
                               const BranchOptions& opts) {
    if (!(seed_offset >= 1e-7 && seed_offset <= 1e-4))
        throw std::invalid_argument("manifold_branch: seed_offset must lie in [1e-7, 1e-4]");

    const State saddle = equilibrium(p, which);
    const State v = saddle_eigvec(p, which, kind == ManifoldKind::Unstable);
    const double sgn = side == BranchSide::Plus ? 1.0 : -1.0;
    const State seed{saddle.x + sgn * seed_offset * v.x,
                     saddle.y + sgn * seed_offset * v.y};

    IntegrateOptions io;
    io.tol = opts.tol;
    io.section = opts.section;
    io.section_skip_time = opts.section_skip_time;
    const double t_end = kind == ManifoldKind::Unstable ? opts.t_budget : -opts.t_budget;

    ManifoldBranch b;
    b.saddle = saddle;
    b.kind = kind;
    b.side = side;
    b.seed_offset = seed_offset;
    b.path = integrate(p, seed, t_end, io);
    return b;
}

} // namespace mvdp
