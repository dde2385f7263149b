#include "mvdp/limit_cycle.hpp"

#include <algorithm>
#include <cmath>

namespace mvdp {

namespace {

Section downward_positive_x_section() {
    Section sec;
    sec.axis = Section::Axis::Y;
    sec.value = 0.0;
    sec.half = +1;     // x > 0
    sec.crossing = -1; // y decreasing
    return sec;
}

struct Return {
    double x;
    double time;
};

std::optional<Return> return_map(const SystemParams& p, double x0, double tol,
                                 double t_budget = 200.0) {
    IntegrateOptions io;
    io.tol = tol;
    io.section = downward_positive_x_section();
    io.section_skip_time = 1e-3;
    const Trajectory traj = integrate(p, State{x0, 0.0}, t_budget, io);
    if (traj.stop != Trajectory::Stop::SectionHit)
        return std::nullopt;
    return Return{traj.hit->s.x, traj.hit->t};
}

} // namespace

CycleDetection detect_limit_cycle(const SystemParams& p, const CycleOptions& opts) {
    const auto [ev, cls] = classify(p, EquilibriumId::E0);
    if (cls.kind != Stability::Source)
        throw std::invalid_argument("detect_limit_cycle requires E0 to be a source");

    // Seed near the small-amplitude cycle scale, clamped inside the basin.
    const double basin = 0.45 * std::min(std::abs(p.d), std::abs(p.e));
    const double x_seed = std::clamp(2.0 * std::sqrt(p.theta), 1e-3, std::max(basin, 1e-3));

    // Warm up: march the return map until successive crossings settle.
    double x_prev = x_seed;
    auto r = return_map(p, x_prev, opts.tol);
    if (!r)
        return {std::nullopt, "no return to the section {y=0, x>0} from the seed"};
    double x_curr = r->x;
    double elapsed = r->time;
    while (elapsed < opts.warmup_time && std::abs(x_curr - x_prev) > 1e-4) {
        auto rn = return_map(p, x_curr, opts.tol);
        if (!rn)
            return {std::nullopt, "return map lost the section during warmup"};
        x_prev = x_curr;
        x_curr = rn->x;
        elapsed += rn->time;
    }

    // Damped secant iteration on g(x) = P(x) - x.
    double x1 = x_curr;
    double x0 = x_prev != x_curr ? x_prev : x_curr * (1.0 + 1e-4);
    auto g = [&](double x) -> std::optional<double> {
        auto ret = return_map(p, x, opts.tol);
        if (!ret)
            return std::nullopt;
        return ret->x - x;
    };
    auto g0 = g(x0), g1 = g(x1);
    if (!g0 || !g1)
        return {std::nullopt, "return map undefined near the warmup point"};

    for (int it = 0; it < opts.max_secant_iters; ++it) {
        if (std::abs(*g1) < opts.fixpoint_tol) {
            auto fixed = return_map(p, x1, opts.tol);
            if (!fixed)
                return {std::nullopt, "fixed point lost on re-evaluation"};
            IntegrateOptions io;
            io.tol = opts.tol;
            Trajectory orbit = integrate(p, State{x1, 0.0}, fixed->time, io);
            LimitCycle cycle{State{x1, 0.0}, fixed->time, std::move(orbit)};
            return {std::move(cycle), ""};
        }
        const double denom = *g1 - *g0;
        double step = denom != 0.0 ? -*g1 * (x1 - x0) / denom : -*g1;
        const double cap = 0.2 * std::max(std::abs(x1), 0.1);
        step = std::clamp(step, -cap, cap);
        const double x2 = x1 + step;
        if (!(x2 > 0))
            return {std::nullopt, "secant iterate left the half-line x > 0"};
        auto g2 = g(x2);
        if (!g2)
            return {std::nullopt, "return map undefined at a secant iterate"};
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g2;
    }
    return {std::nullopt, "secant iteration did not converge within budget"};
}

OmegaLimit omega_limit_estimate(const SystemParams& p, const Trajectory& traj) {
    if (traj.stop == Trajectory::Stop::Escaped)
        return {OmegaKind::Escaped, std::nullopt};
    if (traj.samples.size() < 10)
        return {OmegaKind::Undetermined, std::nullopt};

    // Equilibrium: the whole last tenth of the samples sits within 1e-6 of one.
    const std::size_t tail_begin = traj.samples.size() - traj.samples.size() / 10 - 1;
    for (const State& eq : equilibria(p)) {
        bool near = true;
        for (std::size_t i = tail_begin; i < traj.samples.size(); ++i) {
            const auto& s = traj.samples[i].s;
            if (std::hypot(s.x - eq.x, s.y - eq.y) > 1e-6) {
                near = false;
                break;
            }
        }
        if (near)
            return {OmegaKind::Equilibrium, eq};
    }

    // Cycle: downward crossings of {y=0, x>0} with shrinking return distances.
    std::vector<double> xs;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        if (a.s.y > 0.0 && b.s.y <= 0.0) {
            const double w = a.s.y / (a.s.y - b.s.y);
            const double xc = a.s.x + w * (b.s.x - a.s.x);
            if (xc > 0.0)
                xs.push_back(xc);
        }
    }
    if (xs.size() >= 4) {
        std::vector<double> gaps;
        for (std::size_t i = 1; i < xs.size(); ++i)
            gaps.push_back(std::abs(xs[i] - xs[i - 1]));
        const double last = gaps.back();
        const double first = gaps.front();
        if (last < 1e-3 && last <= first + 1e-12)
            return {OmegaKind::Cycle, std::nullopt};
    }
    return {OmegaKind::Undetermined, std::nullopt};
}

} // namespace mvdp
