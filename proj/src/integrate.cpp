#include "mvdp/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mvdp {

double escape_box_x(const SystemParams& p) {
    return 10.0 * std::max({std::abs(p.d), std::abs(p.e), 1.0});
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b (5th order) minus bhat (4th order): the embedded error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Vec2 {
    double x, y;
};

inline Vec2 axpy(const State& s, double h, double cx, double cy) {
    return {s.x + h * cx, s.y + h * cy};
}

inline Vec2 f(const SystemParams& p, double x, double y) {
    return {y, -(x * x - p.theta) * y - x * (x + p.d) * (x + p.e) / (p.d * p.e)};
}

struct StepResult {
    State next;
    Vec2 k1, k7;   // derivatives at both step ends, for Hermite interpolation
    double err;    // scaled error norm
};

StepResult dopri_step(const SystemParams& p, const State& s, double h, double tol,
                      const Vec2& k1) {
    Vec2 v = {s.x + h * a21 * k1.x, s.y + h * a21 * k1.y};
    Vec2 k2 = f(p, v.x, v.y);
    v = {s.x + h * (a31 * k1.x + a32 * k2.x), s.y + h * (a31 * k1.y + a32 * k2.y)};
    Vec2 k3 = f(p, v.x, v.y);
    v = {s.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
         s.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y)};
    Vec2 k4 = f(p, v.x, v.y);
    v = {s.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
         s.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y)};
    Vec2 k5 = f(p, v.x, v.y);
    v = {s.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
         s.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y)};
    Vec2 k6 = f(p, v.x, v.y);

    State next{s.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
               s.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y)};
    Vec2 k7 = f(p, next.x, next.y); // FSAL

    const double ex =
        h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x);
    const double ey =
        h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);

    const double sx = tol * std::max({1.0, std::abs(s.x), std::abs(next.x)});
    const double sy = tol * std::max({1.0, std::abs(s.y), std::abs(next.y)});
    const double err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy) * (ey / sy)));
    return {next, k1, k7, err};
}

// Cubic Hermite value on [0, h] from endpoint values and derivatives.
inline double hermite(double h, double u, double y0, double y1, double d0, double d1) {
    const double s = u / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

struct CrossingSearch {
    bool found = false;
    double u = 0;
    State s;
};

// Locate the first admissible section crossing inside one accepted step using
// the cubic Hermite interpolant. h may be negative (backward time).
CrossingSearch find_crossing(const Section& sec, double h, const State& s0,
                             const State& s1, const Vec2& k0, const Vec2& k1) {
    const bool on_x = sec.axis == Section::Axis::X;
    const double g0 = (on_x ? s0.x : s0.y) - sec.value;
    const double g1 = (on_x ? s1.x : s1.y) - sec.value;
    if (g0 == 0.0 && g1 == 0.0)
        return {};
    if ((g0 > 0) == (g1 > 0) && g0 != 0.0 && g1 != 0.0)
        return {};

    auto gval = [&](double u) {
        return (on_x ? hermite(h, u, s0.x, s1.x, k0.x, k1.x)
                     : hermite(h, u, s0.y, s1.y, k0.y, k1.y)) -
               sec.value;
    };
    double lo = 0.0, hi = h;
    double glo = g0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gval(mid);
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    const double u = 0.5 * (lo + hi);
    State hit{hermite(h, u, s0.x, s1.x, k0.x, k1.x),
              hermite(h, u, s0.y, s1.y, k0.y, k1.y)};

    const double other = on_x ? hit.y : hit.x;
    if (sec.half > 0 && !(other > 0))
        return {};
    if (sec.half < 0 && !(other < 0))
        return {};
    if (sec.crossing != 0) {
        // sign of d(axis coord)/dt at the hit, in real time
        const double slope = on_x ? hit.y : 0.0;
        double deriv = slope;
        if (!on_x) {
            const double d0 = k0.y, d1 = k1.y;
            deriv = d0 + (d1 - d0) * (u / h);
        }
        if (sec.crossing > 0 && !(deriv > 0))
            return {};
        if (sec.crossing < 0 && !(deriv < 0))
            return {};
    }
    return {true, u, hit};
}

} // namespace

Trajectory integrate(const SystemParams& p, const State& s0, double t_end,
                     const IntegrateOptions& opts) {
    if (t_end == 0.0)
        throw std::invalid_argument("integrate: t_end must be nonzero");
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-3))
        throw std::invalid_argument("integrate: tol must lie in [1e-12, 1e-3]");
    if (!std::isfinite(s0.x) || !std::isfinite(s0.y))
        throw std::invalid_argument("integrate: initial state must be finite");

    const double dir = t_end > 0 ? 1.0 : -1.0;
    const double box_x = escape_box_x(p);

    Trajectory traj;
    traj.forward = dir > 0;
    traj.samples.push_back({0.0, s0});

    double t = 0.0;
    State s = s0;
    Vec2 k1 = f(p, s.x, s.y);
    double h = dir * std::min(1e-3, std::abs(t_end));
    double err_prev = 1.0;
    const double hmin_floor = 1e4 * std::numeric_limits<double>::epsilon();

    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        if ((t_end - t) * dir <= 0.0) {
            traj.stop = Trajectory::Stop::TimeReached;
            return traj;
        }
        if (std::abs(h) > std::abs(t_end - t))
            h = t_end - t;

        const StepResult r = dopri_step(p, s, h, opts.tol, k1);
        if (!std::isfinite(r.err) || r.err > 1.0) {
            // reject; shrink
            double shrink = std::isfinite(r.err)
                                ? std::max(0.2, 0.9 * std::pow(r.err, -0.2))
                                : 0.2;
            h *= shrink;
            if (std::abs(h) < hmin_floor * std::max(1.0, std::abs(t))) {
                throw StiffSegmentError("stiff/singular segment: step size underflow",
                                        std::move(traj));
            }
            continue;
        }

        // accepted
        if (opts.section && std::abs(t + h) > opts.section_skip_time) {
            auto c = find_crossing(*opts.section, h, s, r.next, r.k1, r.k7);
            if (c.found && std::abs(t + c.u) > opts.section_skip_time) {
                traj.samples.push_back({t + c.u, c.s});
                traj.stop = Trajectory::Stop::SectionHit;
                traj.hit = SectionHit{t + c.u, c.s};
                return traj;
            }
        }

        t += h;
        s = r.next;
        k1 = r.k7;
        traj.samples.push_back({t, s});

        if (std::abs(s.x) > box_x || std::abs(s.y) > escape_box_y) {
            traj.stop = Trajectory::Stop::Escaped;
            return traj;
        }

        // PI step-size controller
        const double e = std::max(r.err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev, 0.04);
        fac = std::clamp(fac, 0.2, 5.0);
        err_prev = e;
        h *= fac;
    }
    traj.stop = Trajectory::Stop::StepLimit;
    return traj;
}

} // namespace mvdp
