#include <doctest.h>

#include <cmath>

#include "mvdp/integrate.hpp"

using namespace mvdp;

TEST_CASE("input validation") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    CHECK_THROWS_AS(integrate(p, {0.1, 0.0}, 0.0), std::invalid_argument);
    IntegrateOptions bad;
    bad.tol = 1e-2;
    CHECK_THROWS_AS(integrate(p, {0.1, 0.0}, 1.0, bad), std::invalid_argument);
    bad.tol = 1e-13;
    CHECK_THROWS_AS(integrate(p, {0.1, 0.0}, 1.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, {std::nan(""), 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("equilibria stay put") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    for (const State& eq : equilibria(p)) {
        const auto traj = integrate(p, eq, 100.0);
        CHECK(traj.stop == Trajectory::Stop::TimeReached);
        const auto& last = traj.back().s;
        CHECK(std::hypot(last.x - eq.x, last.y - eq.y) < 1e-9);
    }
}

TEST_CASE("time is strictly monotone in the stated direction") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    const auto fwd = integrate(p, {0.3, 0.0}, 10.0);
    CHECK(fwd.forward);
    for (std::size_t i = 1; i < fwd.samples.size(); ++i)
        CHECK(fwd.samples[i].t > fwd.samples[i - 1].t);

    const auto bwd = integrate(p, {0.3, 0.0}, -10.0);
    CHECK_FALSE(bwd.forward);
    for (std::size_t i = 1; i < bwd.samples.size(); ++i)
        CHECK(bwd.samples[i].t < bwd.samples[i - 1].t);
}

TEST_CASE("forward orbit near the origin settles onto a closed orbit") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    IntegrateOptions o;
    o.tol = 1e-8;
    const auto traj = integrate(p, {0.01, 0.0}, 900.0, o);
    REQUIRE(traj.stop == Trajectory::Stop::TimeReached);

    // tail crossings of {y=0, x>0} settle to a fixed radius
    double last_x = 0, prev_x = 0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        if (a.s.y > 0 && b.s.y <= 0 && a.s.x > 0) {
            prev_x = last_x;
            const double w = a.s.y / (a.s.y - b.s.y);
            last_x = a.s.x + w * (b.s.x - a.s.x);
        }
    }
    REQUIRE(prev_x > 0);
    CHECK(std::abs(last_x - prev_x) < 1e-3);
    CHECK(last_x > 0.1); // finite-amplitude orbit, not the equilibrium
}

TEST_CASE("self-convergence: tightening tol by a decade at least halves the error") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    IntegrateOptions ref_opts;
    ref_opts.tol = 1e-12;
    const State ref = integrate(p, {0.3, 0.0}, 30.0, ref_opts).back().s;

    auto err_at = [&](double tol) {
        IntegrateOptions o;
        o.tol = tol;
        const State s = integrate(p, {0.3, 0.0}, 30.0, o).back().s;
        return std::hypot(s.x - ref.x, s.y - ref.y);
    };
    double prev = err_at(1e-5);
    for (double tol : {1e-6, 1e-7, 1e-8}) {
        const double err = err_at(tol);
        CHECK(err <= 0.5 * prev);
        prev = err;
    }
}

TEST_CASE("time reversal returns to the start within 100*tol") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    for (double tol : {1e-9, 1e-10, 1e-11}) {
        IntegrateOptions o;
        o.tol = tol;
        const auto fwd = integrate(p, {0.3, 0.0}, 2.0, o);
        const auto bwd = integrate(p, fwd.back().s, -2.0, o);
        const double err = std::hypot(bwd.back().s.x - 0.3, bwd.back().s.y);
        CHECK(err < 100.0 * tol);
    }
}

TEST_CASE("escape from the integration box is flagged") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    CHECK(escape_box_x(p) == 20.0);
    const auto traj = integrate(p, {19.99, 90.0}, 50.0);
    CHECK(traj.stop == Trajectory::Stop::Escaped);
    CHECK(traj.duration() < 50.0);
}

TEST_CASE("section crossing stops the trajectory at an interpolated hit") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    IntegrateOptions o;
    o.section = Section{Section::Axis::Y, 0.0, +1, -1}; // next downward crossing, x > 0
    o.section_skip_time = 1e-3;
    const auto traj = integrate(p, {0.2, 0.0}, 50.0, o);
    REQUIRE(traj.stop == Trajectory::Stop::SectionHit);
    REQUIRE(traj.hit.has_value());
    CHECK(std::abs(traj.hit->s.y) < 1e-9);
    CHECK(traj.hit->s.x > 0.0);
    CHECK(traj.hit->t > 1.0); // a revolution takes ~2*pi

    // vertical-line section in the lower half plane
    IntegrateOptions o2;
    o2.section = Section{Section::Axis::X, 0.0, -1, 0};
    o2.section_skip_time = 1e-3;
    const auto t2 = integrate(p, {0.2, 0.0}, 50.0, o2);
    REQUIRE(t2.stop == Trajectory::Stop::SectionHit);
    CHECK(std::abs(t2.hit->s.x) < 1e-9);
    CHECK(t2.hit->s.y < 0.0);
}

TEST_CASE("area contraction matches the divergence for theta < 0") {
    const auto p = SystemParams::make(0.5, 2.0, -0.3);
    IntegrateOptions o;
    o.tol = 1e-10;
    const double h = 1e-5, T = 3.0;
    const State a{0.5, 0.2};
    const auto ta = integrate(p, a, T, o);
    const auto tb = integrate(p, {a.x + h, a.y}, T, o);
    const auto tc = integrate(p, {a.x, a.y + h}, T, o);
    const double ux = tb.back().s.x - ta.back().s.x, uy = tb.back().s.y - ta.back().s.y;
    const double vx = tc.back().s.x - ta.back().s.x, vy = tc.back().s.y - ta.back().s.y;
    const double measured = std::abs(ux * vy - uy * vx) / (h * h);

    double integral = 0; // trapezoid rule on the trace theta - x^2 (< 0 here)
    for (std::size_t i = 1; i < ta.samples.size(); ++i) {
        const auto& s0 = ta.samples[i - 1];
        const auto& s1 = ta.samples[i];
        CHECK(p.theta - s0.s.x * s0.s.x < 0.0);
        integral += 0.5 * ((p.theta - s0.s.x * s0.s.x) + (p.theta - s1.s.x * s1.s.x)) *
                    (s1.t - s0.t);
    }
    const double predicted = std::exp(integral);
    CHECK(measured < 1.0);
    CHECK(std::abs(measured / predicted - 1.0) < 0.10);
}
