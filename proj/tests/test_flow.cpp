#include <doctest.h>

#include <cmath>

#include "mvdp/connection.hpp"
#include "mvdp/limit_cycle.hpp"
#include "mvdp/manifold.hpp"

using namespace mvdp;

TEST_CASE("manifold branch preconditions") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    CHECK_THROWS_AS(manifold_branch(p, EquilibriumId::E0, ManifoldKind::Unstable,
                                    BranchSide::Plus),
                    std::invalid_argument); // E0 is a focus, not a saddle
    CHECK_THROWS_AS(manifold_branch(p, EquilibriumId::E1, ManifoldKind::Unstable,
                                    BranchSide::Plus, 1e-2),
                    std::invalid_argument); // offset out of range
}

TEST_CASE("branch seeds sit on the eigenvector at the requested offset") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    const auto b = manifold_branch(p, EquilibriumId::E1, ManifoldKind::Unstable,
                                   BranchSide::Plus, 1e-5);
    const auto& seed = b.path.front().s;
    CHECK(std::hypot(seed.x - b.saddle.x, seed.y - b.saddle.y) == doctest::Approx(1e-5));
    CHECK(seed.x > b.saddle.x); // Plus points toward positive x
    const auto v = saddle_eigvec(p, EquilibriumId::E1, true);
    CHECK(v.y > 0.0); // unstable direction rises to the right
    const auto vs = saddle_eigvec(p, EquilibriumId::E1, false);
    CHECK(vs.y < 0.0);
}

TEST_CASE("unstable-minus branch of E1 runs into the sink E2") {
    const auto p = SystemParams::make(0.5, 2.0, 0.1);
    const auto b =
        manifold_branch(p, EquilibriumId::E1, ManifoldKind::Unstable, BranchSide::Minus);
    const auto w = omega_limit_estimate(p, b.path);
    REQUIRE(w.kind == OmegaKind::Equilibrium);
    CHECK(w.equilibrium->x == doctest::Approx(-2.0));
    CHECK(w.equilibrium->y == doctest::Approx(0.0));
}

TEST_CASE("unstable-plus branch of E1 spirals onto the cycle before the loop forms") {
    const auto p = SystemParams::make(0.5, 2.0, 0.02);
    const auto b =
        manifold_branch(p, EquilibriumId::E1, ManifoldKind::Unstable, BranchSide::Plus);
    CHECK(omega_limit_estimate(p, b.path).kind == OmegaKind::Cycle);
}

TEST_CASE("halving the seed offset moves the first section crossing by O(offset)") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    double prev_y = std::nan("");
    for (double off : {4e-5, 2e-5, 1e-5}) {
        GapOptions o;
        o.seed_offset = off;
        const auto g = connection_gap(p, ConnectionKind::Homoclinic, o);
        if (!std::isnan(prev_y))
            CHECK(std::abs(g.unstable_hit.y - prev_y) <= off);
        prev_y = g.unstable_hit.y;
    }
}

TEST_CASE("limit cycle detection across the loop bifurcation") {
    const auto found = detect_limit_cycle(SystemParams::make(0.5, 2.0, 0.02));
    REQUIRE(found.cycle.has_value());
    CHECK(found.cycle->section_point.x > 0.1);
    CHECK(found.cycle->section_point.y == 0.0);
    CHECK(found.cycle->period > 5.0);
    CHECK(found.cycle->period < 10.0);

    // the returned orbit closes up
    const auto& orbit = found.cycle->orbit;
    const auto& s0 = orbit.front().s;
    const auto& s1 = orbit.back().s;
    CHECK(std::hypot(s1.x - s0.x, s1.y - s0.y) < 1e-6);

    const auto gone = detect_limit_cycle(SystemParams::make(0.5, 2.0, 0.1));
    CHECK_FALSE(gone.cycle.has_value());
    CHECK_FALSE(gone.diagnostic.empty());

    CHECK_THROWS_AS(detect_limit_cycle(SystemParams::make(0.5, 2.0, -0.1)),
                    std::invalid_argument); // E0 must be a source
}

TEST_CASE("cycle amplitude follows the square-root law near the birth of the cycle") {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double th : {1e-3, 3e-3, 1e-2}) {
        const auto det = detect_limit_cycle(SystemParams::make(0.5, 2.0, th));
        REQUIRE(det.cycle.has_value());
        const double lx = std::log(th), ly = std::log(det.cycle->section_point.x);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("omega limit classification") {
    IntegrateOptions o;
    o.tol = 1e-8;
    const auto p1 = SystemParams::make(0.5, 2.0, 0.1);
    const auto w1 = omega_limit_estimate(p1, integrate(p1, {0.01, 0.0}, 300.0, o));
    REQUIRE(w1.kind == OmegaKind::Equilibrium);
    CHECK(w1.equilibrium->x == doctest::Approx(-2.0));

    const auto p2 = SystemParams::make(0.5, 2.0, 0.02);
    CHECK(omega_limit_estimate(p2, integrate(p2, {0.01, 0.0}, 1500.0, o)).kind ==
          OmegaKind::Cycle);

    const auto w3 = omega_limit_estimate(p1, integrate(p1, {-2.0, 0.0}, 100.0, o));
    REQUIRE(w3.kind == OmegaKind::Equilibrium);
    CHECK(w3.equilibrium->x == doctest::Approx(-2.0));

    const auto w4 = omega_limit_estimate(p1, integrate(p1, {19.99, 90.0}, 50.0, o));
    CHECK(w4.kind == OmegaKind::Escaped);
}

TEST_CASE("gap geometry defaults") {
    // same-sign parameters: loop at E1 left of the origin, Plus sides
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    const auto g = default_gap_geometry(p, ConnectionKind::Homoclinic);
    CHECK(g.source == EquilibriumId::E1);
    CHECK(g.unstable_side == BranchSide::Plus);
    CHECK(g.stable_side == BranchSide::Plus);
    CHECK(g.section.value == 0.0);
    CHECK(g.section.half == -1);
    CHECK_THROWS_AS(default_gap_geometry(p, ConnectionKind::HeteroclinicUpper),
                    std::invalid_argument); // needs saddles on both sides

    // mixed signs: E1 right of the origin, Minus side carries the loop
    const auto pm = SystemParams::make(-1.0, 2.0, 0.15);
    const auto gm = default_gap_geometry(pm, ConnectionKind::Homoclinic);
    CHECK(gm.unstable_side == BranchSide::Minus);

    const auto gu = default_gap_geometry(pm, ConnectionKind::HeteroclinicUpper);
    CHECK(gu.source == EquilibriumId::E2); // saddle at (-2,0) fires rightward
    CHECK(gu.target == EquilibriumId::E1);
    CHECK(gu.section.value == doctest::Approx(-0.5));
    CHECK(gu.section.half == +1);

    const auto gl = default_gap_geometry(pm, ConnectionKind::HeteroclinicLower);
    CHECK(gl.source == EquilibriumId::E1);
    CHECK(gl.target == EquilibriumId::E2);
    CHECK(gl.section.half == -1);
}

TEST_CASE("gap signs flip inside the four reference brackets") {
    auto sign_flips = [](double d, double e, double lo, double hi, ConnectionKind k) {
        const auto g_lo = connection_gap(SystemParams::make(d, e, lo), k).value;
        const auto g_hi = connection_gap(SystemParams::make(d, e, hi), k).value;
        return (g_lo > 0) != (g_hi > 0);
    };
    CHECK(sign_flips(0.5, 2.0, 0.02, 0.04, ConnectionKind::Homoclinic));
    CHECK(sign_flips(-1.0, 2.0, -0.2, -0.05, ConnectionKind::HeteroclinicUpper));
    CHECK(sign_flips(-1.0, 2.0, 0.1, 0.2, ConnectionKind::Homoclinic));
    CHECK(sign_flips(-1.0, 2.0, 1.1, 1.2, ConnectionKind::HeteroclinicLower));
}

TEST_CASE("gap is continuous in theta on a bracket interior") {
    const auto base = connection_gap(SystemParams::make(0.5, 2.0, 0.03),
                                     ConnectionKind::Homoclinic)
                          .value;
    double prev = 1e9;
    for (double del : {1e-2, 1e-3, 1e-4}) {
        const auto g = connection_gap(SystemParams::make(0.5, 2.0, 0.03 + del),
                                      ConnectionKind::Homoclinic)
                           .value;
        const double diff = std::abs(g - base);
        CHECK(diff < prev);
        CHECK(diff <= 2.0 * del); // empirically ~1.0 * delta
        prev = diff;
    }
}

TEST_CASE("gap errors") {
    // a section the branch cannot reach
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    GapOptions o;
    auto geom = default_gap_geometry(p, ConnectionKind::Homoclinic);
    geom.section.value = 15.0; // inside the box, far beyond the orbit
    o.geometry = geom;
    CHECK_THROWS_WITH_AS(connection_gap(p, ConnectionKind::Homoclinic, o),
                         "no crossing: unstable branch missed the section", NumericalError);
}

TEST_CASE("bisection refines the loop bracket and is stable under tolerance changes") {
    const auto family = SystemParams::make(0.5, 2.0, 0.0);
    const auto b =
        bisect_bifurcation(family, 0.02, 0.04, ConnectionKind::Homoclinic, 1e-4);
    CHECK(b.refined_theta > 0.02);
    CHECK(b.refined_theta < 0.04);
    CHECK((b.gap_lo > 0) != (b.gap_hi > 0));

    double prev_theta = 0.0, prev_tol = 0.0;
    for (double tt : {1e-2, 1e-3, 1e-4}) {
        const auto bb = bisect_bifurcation(family, 0.02, 0.04, ConnectionKind::Homoclinic, tt);
        if (prev_tol > 0)
            CHECK(std::abs(bb.refined_theta - prev_theta) < prev_tol);
        prev_theta = bb.refined_theta;
        prev_tol = tt;
    }

    CHECK_THROWS_WITH_AS(
        bisect_bifurcation(family, 0.05, 0.06, ConnectionKind::Homoclinic, 1e-4),
        "invalid bracket: gap has the same sign at both endpoints", NumericalError);
}

TEST_CASE("theta sweep finds the bracketed sign change") {
    const auto family = SystemParams::make(0.5, 2.0, 0.0);
    SweepOptions so;
    so.tol_theta = 1e-4;
    const auto brackets =
        sweep_bifurcations(family, 0.0, 0.1, 0.02, ConnectionKind::Homoclinic, so);
    REQUIRE(brackets.size() == 1);
    CHECK(brackets[0].refined_theta > 0.02);
    CHECK(brackets[0].refined_theta < 0.04);
}

TEST_CASE("after the loop breaks, both unstable branches of E1 reach the sink") {
    const auto p = SystemParams::make(0.5, 2.0, 0.04);
    for (const auto side : {BranchSide::Plus, BranchSide::Minus}) {
        const auto b = manifold_branch(p, EquilibriumId::E1, ManifoldKind::Unstable, side);
        const auto w = omega_limit_estimate(p, b.path);
        REQUIRE(w.kind == OmegaKind::Equilibrium);
        CHECK(w.equilibrium->x == doctest::Approx(-2.0));
    }
}
