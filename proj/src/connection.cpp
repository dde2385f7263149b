#include "mvdp/connection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mvdp {

const char* to_string(ConnectionKind k) {
    switch (k) {
    case ConnectionKind::Homoclinic: return "homoclinic";
    case ConnectionKind::HeteroclinicUpper: return "heteroclinic-upper";
    case ConnectionKind::HeteroclinicLower: return "heteroclinic-lower";
    }
    return "?";
}

GapGeometry default_gap_geometry(const SystemParams& p, ConnectionKind kind) {
    GapGeometry g;
    const double x1 = -p.d; // E1
    const double x2 = -p.e; // E2

    if (kind == ConnectionKind::Homoclinic) {
        // Loop at E1 around the origin: both branch sides face the origin and
        // the splitting is read off under the origin.
        const BranchSide toward_origin = x1 < 0.0 ? BranchSide::Plus : BranchSide::Minus;
        g.source = EquilibriumId::E1;
        g.target = EquilibriumId::E1;
        g.unstable_side = toward_origin;
        g.stable_side = toward_origin;
        g.section.axis = Section::Axis::X;
        g.section.value = 0.0;
        g.section.half = -1;
        return g;
    }

    if (std::signbit(p.d) == std::signbit(p.e))
        throw std::invalid_argument(
            "heteroclinic connection requires saddles on both sides: sign(d) != sign(e)");

    const EquilibriumId left = x1 < x2 ? EquilibriumId::E1 : EquilibriumId::E2;
    const EquilibriumId right = x1 < x2 ? EquilibriumId::E2 : EquilibriumId::E1;
    g.section.axis = Section::Axis::X;
    g.section.value = 0.5 * (x1 + x2);
    if (kind == ConnectionKind::HeteroclinicUpper) {
        // Upper half plane flows rightward: left saddle fires, right receives.
        g.source = left;
        g.unstable_side = BranchSide::Plus;
        g.target = right;
        g.stable_side = BranchSide::Minus;
        g.section.half = +1;
    } else {
        g.source = right;
        g.unstable_side = BranchSide::Minus;
        g.target = left;
        g.stable_side = BranchSide::Plus;
        g.section.half = -1;
    }
    return g;
}

ConnectionGap connection_gap(const SystemParams& p, ConnectionKind kind,
                             const GapOptions& opts) {
    const GapGeometry geom =
        opts.geometry ? *opts.geometry : default_gap_geometry(p, kind);

    BranchOptions bo;
    bo.tol = opts.tol;
    bo.t_budget = opts.t_budget;
    bo.section = geom.section;
    bo.section_skip_time = 1e-3;

    const ManifoldBranch unstable =
        manifold_branch(p, geom.source, ManifoldKind::Unstable, geom.unstable_side,
                        opts.seed_offset, bo);
    if (unstable.path.stop != Trajectory::Stop::SectionHit)
        throw NumericalError("no crossing: unstable branch missed the section");

    const ManifoldBranch stable =
        manifold_branch(p, geom.target, ManifoldKind::Stable, geom.stable_side,
                        opts.seed_offset, bo);
    if (stable.path.stop != Trajectory::Stop::SectionHit)
        throw NumericalError("no crossing: stable branch missed the section");

    ConnectionGap gap;
    gap.kind = kind;
    gap.unstable_hit = unstable.path.hit->s;
    gap.stable_hit = stable.path.hit->s;
    gap.value = gap.unstable_hit.y - gap.stable_hit.y;
    return gap;
}

BifurcationBracket bisect_bifurcation(const SystemParams& family, double theta_lo,
                                      double theta_hi, ConnectionKind kind,
                                      double tol_theta, const GapOptions& opts) {
    if (!(theta_lo < theta_hi))
        throw std::invalid_argument("bisect_bifurcation: require theta_lo < theta_hi");

    auto gap_at = [&](double th) {
        return connection_gap(family.with_theta(th), kind, opts).value;
    };

    double lo = theta_lo, hi = theta_hi;
    double glo = gap_at(lo);
    double ghi = gap_at(hi);
    BifurcationBracket out;
    out.kind = kind;
    out.theta_lo = theta_lo;
    out.theta_hi = theta_hi;
    out.gap_lo = glo;
    out.gap_hi = ghi;

    if (glo == 0.0) {
        out.refined_theta = lo;
        return out;
    }
    if (ghi == 0.0) {
        out.refined_theta = hi;
        return out;
    }
    if ((glo > 0) == (ghi > 0))
        throw NumericalError("invalid bracket: gap has the same sign at both endpoints");

    while (hi - lo > tol_theta) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap_at(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    out.refined_theta = 0.5 * (lo + hi);
    return out;
}

std::vector<BifurcationBracket> sweep_bifurcations(const SystemParams& family,
                                                   double theta_lo, double theta_hi,
                                                   double step, ConnectionKind kind,
                                                   const SweepOptions& opts) {
    if (!(theta_lo < theta_hi) || !(step > 0))
        throw std::invalid_argument("sweep_bifurcations: bad range or step");

    std::vector<double> thetas;
    for (double th = theta_lo; th < theta_hi + 0.5 * step; th += step)
        thetas.push_back(std::min(th, theta_hi));

    // Evaluate the gap at every sample concurrently; merge in theta order.
    std::vector<std::optional<double>> gaps(thetas.size());
    unsigned n_threads = opts.threads > 0 ? unsigned(opts.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, thetas.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (std::size_t i = cursor.fetch_add(1); i < thetas.size();
             i = cursor.fetch_add(1)) {
            try {
                gaps[i] = connection_gap(family.with_theta(thetas[i]), kind, opts.gap).value;
            } catch (const std::exception&) {
                gaps[i] = std::nullopt;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < n_threads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::vector<BifurcationBracket> out;
    for (std::size_t i = 1; i < thetas.size(); ++i) {
        if (!gaps[i - 1] || !gaps[i])
            continue;
        const double a = *gaps[i - 1], b = *gaps[i];
        if (a == 0.0 || (a > 0) != (b > 0)) {
            out.push_back(bisect_bifurcation(family, thetas[i - 1], thetas[i], kind,
                                             opts.tol_theta, opts.gap));
        }
    }
    return out;
}

} // namespace mvdp
