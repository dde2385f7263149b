#include <doctest.h>

#include <cmath>
#include <random>

#include "mvdp/model.hpp"

using namespace mvdp;

namespace {

// Independent 2x2 eigensolver: numerically careful quadratic on the
// characteristic polynomial of the full matrix.
SpectralData eig2x2(const Mat2& m) {
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        double r1, r2;
        if (tr >= 0.0) {
            r1 = (tr + s) / 2.0;
        } else {
            r1 = (tr - s) / 2.0;
        }
        r2 = (r1 != 0.0) ? det / r1 : (tr - (tr >= 0.0 ? s : -s)) / 2.0;
        if (r1 > r2)
            std::swap(r1, r2);
        return {{r1, 0.0}, {r2, 0.0}};
    }
    const double w = std::sqrt(-disc) / 2.0;
    return {{tr / 2.0, -w}, {tr / 2.0, w}};
}

double rel_err(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), 1e-30);
    return std::abs(a - b) / scale;
}

// Valid parameter triple with all equilibria comfortably nondegenerate.
SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    std::uniform_real_distribution<double> th(-3.0, 3.0);
    std::bernoulli_distribution flip(0.5);
    for (;;) {
        double d = mag(rng) * (flip(rng) ? 1 : -1);
        double e = mag(rng) * (flip(rng) ? 1 : -1);
        if (std::abs(d) > std::abs(e))
            std::swap(d, e);
        if (d == e || std::abs(d - e) < 0.05)
            continue;
        const double theta = th(rng);
        // keep clear of the degenerate classification surfaces
        if (std::abs(theta - d * d) < 1e-3 || std::abs(theta - e * e) < 1e-3)
            continue;
        // keep eigenvalues away from 0 so relative comparisons make sense
        if (std::abs(1.0 - d / e) < 1e-2)
            continue;
        return SystemParams::make(d, e, theta);
    }
}

} // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW(SystemParams::make(0.5, 2.0, 0.03));
    CHECK_NOTHROW(SystemParams::make(-1.0, 2.0, 0.0));
    CHECK_NOTHROW(SystemParams::make(1.0, -1.0, 0.0)); // d = -e is allowed
    CHECK_THROWS_AS(SystemParams::make(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams::make(0.0, 2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams::make(2.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams::make(2.0, 1.0, 0.0), std::invalid_argument); // |d| > |e|
    CHECK_THROWS_AS(SystemParams::make(0.5, 2.0, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("vector field at reference points") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    auto v = vector_field(p, {0.0, 0.0});
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    v = vector_field(p, {-0.5, 0.0});
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);

    const auto p0 = SystemParams::make(0.5, 2.0, 0.0);
    v = vector_field(p0, {1.0, 1.0});
    CHECK(v.x == doctest::Approx(1.0));
    CHECK(v.y == doctest::Approx(-5.5)); // -1 - 1*1.5*3/1
}

TEST_CASE("equilibria locations and residuals") {
    auto p = SystemParams::make(0.5, 2.0, 0.1);
    auto eq = equilibria(p);
    CHECK(eq[0].x == 0.0);
    CHECK(eq[1].x == -0.5);
    CHECK(eq[2].x == -2.0);

    p = SystemParams::make(-1.0, 2.0, 0.1);
    eq = equilibria(p);
    CHECK(eq[1].x == 1.0);
    CHECK(eq[2].x == -2.0);

    p = SystemParams::make(1.0, -1.0, 0.1);
    eq = equilibria(p);
    CHECK(eq[1].x == -1.0);
    CHECK(eq[2].x == 1.0);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto q = random_params(rng);
        for (const auto& s : equilibria(q)) {
            const auto v = vector_field(q, s);
            CHECK(std::hypot(v.x, v.y) < 1e-12);
        }
    }
}

TEST_CASE("jacobian closed forms and finite differences") {
    const auto p = SystemParams::make(0.5, 2.0, 0.07);
    auto j = jacobian(p, {0.0, 0.0});
    CHECK(j.a11 == 0.0);
    CHECK(j.a12 == 1.0);
    CHECK(j.a21 == doctest::Approx(-1.0));
    CHECK(j.a22 == doctest::Approx(0.07));

    j = jacobian(p, {-0.5, 0.0});
    CHECK(j.a21 == doctest::Approx(0.75));        // (e-d)/e
    CHECK(j.a22 == doctest::Approx(0.07 - 0.25)); // theta - d^2

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const auto q = random_params(rng);
        const State s{coord(rng), coord(rng)};
        const auto a = jacobian(q, s);
        const double h = 1e-6;
        auto fd = [&](bool wrt_x, bool comp_y) {
            const State sp{s.x + (wrt_x ? h : 0), s.y + (wrt_x ? 0 : h)};
            const State sm{s.x - (wrt_x ? h : 0), s.y - (wrt_x ? 0 : h)};
            const auto vp = vector_field(q, sp);
            const auto vm = vector_field(q, sm);
            return ((comp_y ? vp.y : vp.x) - (comp_y ? vm.y : vm.x)) / (2 * h);
        };
        const double scale = std::max({1.0, std::abs(a.a21), std::abs(a.a22)});
        CHECK(std::abs(fd(true, false) - a.a11) / scale < 1e-6);
        CHECK(std::abs(fd(false, false) - a.a12) / scale < 1e-6);
        CHECK(std::abs(fd(true, true) - a.a21) / scale < 1e-6);
        CHECK(std::abs(fd(false, true) - a.a22) / scale < 1e-6);
    }
}

TEST_CASE("classification at reference parameters") {
    auto p = SystemParams::make(0.5, 2.0, 0.03);
    auto [ev0, c0] = classify(p, EquilibriumId::E0);
    CHECK(c0.kind == Stability::Source);
    CHECK(ev0.lambda1.real() == doctest::Approx(0.015));
    CHECK(ev0.lambda1.imag() < 0.0);
    CHECK(ev0.lambda2.imag() == -ev0.lambda1.imag());

    auto [ev1, c1] = classify(p, EquilibriumId::E1);
    CHECK(c1.kind == Stability::Saddle);
    CHECK(ev1.lambda1.real() == doctest::Approx(-0.98298).epsilon(1e-4));
    CHECK(ev1.lambda2.real() == doctest::Approx(0.76298).epsilon(1e-4));

    auto [ev2, c2] = classify(p, EquilibriumId::E2);
    CHECK(c2.kind == Stability::Sink);
    CHECK(ev2.lambda1.real() < 0.0);

    auto pw = SystemParams::make(0.5, 2.0, 0.0);
    CHECK(classify(pw, EquilibriumId::E0).second.kind == Stability::WeakSink);
    CHECK(classify(SystemParams::make(0.5, 2.0, -0.4), EquilibriumId::E0).second.kind ==
          Stability::Sink);

    // degenerate surfaces
    auto pd = SystemParams::make(0.5, 2.0, 0.25);
    auto cd = classify(pd, EquilibriumId::E1).second;
    CHECK(cd.kind == Stability::Degenerate);
    CHECK(cd.degeneracy == "theta = d^2");
    auto pe = SystemParams::make(0.5, 2.0, 4.0);
    auto ce = classify(pe, EquilibriumId::E2).second;
    CHECK(ce.kind == Stability::Degenerate);
    CHECK(ce.degeneracy == "theta = e^2");
    CHECK(classify(pe, EquilibriumId::E0).second.kind == Stability::Source);

    // different signs: E2 is a saddle regardless of theta - e^2
    auto pm = SystemParams::make(-1.0, 2.0, 0.1);
    CHECK(classify(pm, EquilibriumId::E2).second.kind == Stability::Saddle);
    CHECK(classify(pm, EquilibriumId::E1).second.kind == Stability::Saddle);
}

TEST_CASE("analytic eigenvalues match a generic eigensolver on 1000 random triples") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        for (const auto id : all_equilibria) {
            const auto analytic = eigenvalues_at(p, id);
            const auto numeric = eig2x2(jacobian(p, equilibrium(p, id)));
            CHECK(rel_err(analytic.lambda1, numeric.lambda1) < 1e-9);
            CHECK(rel_err(analytic.lambda2, numeric.lambda2) < 1e-9);
        }
    }
}

TEST_CASE("E1 is a saddle with lambda1 < 0 < lambda2 whenever theta != d^2") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        const auto [ev, cls] = classify(p, EquilibriumId::E1);
        REQUIRE(cls.kind == Stability::Saddle);
        CHECK(ev.lambda1.real() < 0.0);
        CHECK(ev.lambda2.real() > 0.0);
        CHECK(ev.lambda1.imag() == 0.0);
    }
}

TEST_CASE("lyapunov coefficient is exactly -1") {
    auto [c, L] = lyapunov_coefficient(SystemParams::make(0.5, 2.0, 0.0));
    CHECK(L == -1.0);
    CHECK(c.nu[2][0] == doctest::Approx(-2.5));
    CHECK(c.nu[3][0] == doctest::Approx(-1.0));
    CHECK(c.nu[2][1] == -1.0);
    CHECK(c.mu[2][0] == 0.0);
    CHECK(c.nu[1][1] == 0.0);
    CHECK(c.nu[0][2] == 0.0);

    auto [c2, L2] = lyapunov_coefficient(SystemParams::make(-1.0, 2.0, 0.0));
    CHECK(L2 == -1.0);
    CHECK(c2.nu[2][0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(lyapunov_coefficient(SystemParams::make(0.5, 2.0, 0.1)),
                    std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto p = random_params(rng);
        auto [cc, LL] = lyapunov_coefficient(SystemParams::make(p.d, p.e, 0.0));
        (void)cc;
        CHECK(LL == -1.0);
    }
}

TEST_CASE("conley index table") {
    CHECK(conley_index_of(InvariantKind::Sink).ranks == std::array<int, 3>{1, 0, 0});
    CHECK(conley_index_of(InvariantKind::Saddle).ranks == std::array<int, 3>{0, 1, 0});
    CHECK(conley_index_of(InvariantKind::Source).ranks == std::array<int, 3>{0, 0, 1});
    CHECK(conley_index_of(InvariantKind::StableCycle).ranks == std::array<int, 3>{1, 1, 0});

    Classification weak{Stability::WeakSink, ""};
    CHECK_THROWS_WITH_AS(conley_index_of(weak),
                         "non-hyperbolic: Conley index by continuation not assigned",
                         std::invalid_argument);
    Classification degen{Stability::Degenerate, "theta = d^2"};
    CHECK_THROWS_AS(conley_index_of(degen), std::invalid_argument);
}

TEST_CASE("classify is deterministic") {
    const auto p = SystemParams::make(0.5, 2.0, 0.03);
    for (const auto id : all_equilibria) {
        const auto a = classify(p, id);
        const auto b = classify(p, id);
        CHECK(a.first.lambda1 == b.first.lambda1);
        CHECK(a.first.lambda2 == b.first.lambda2);
        CHECK(a.second.kind == b.second.kind);
    }
}
