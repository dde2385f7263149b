#include <doctest.h>

#include "mvdp/scenario.hpp"

using namespace mvdp;

TEST_CASE("presets parse and carry their brackets") {
    const auto& presets = scenario_presets();
    REQUIRE(presets.size() == 4);
    REQUIRE(presets.count("example4.1") == 1);
    REQUIRE(presets.count("example4.2-het1") == 1);
    REQUIRE(presets.count("example4.2-hom") == 1);
    REQUIRE(presets.count("example4.2-het2") == 1);

    const auto s = parse_scenario(presets.at("example4.1"));
    CHECK(s.name == "example4.1");
    CHECK(s.before.poset.size() == 4);
    CHECK(s.after.poset.size() == 3);
    REQUIRE(s.theta_bracket.has_value());
    CHECK(s.theta_bracket->first == 0.02);
    CHECK(s.theta_bracket->second == 0.04);
    CHECK(s.before.description[std::size_t(s.before.poset.index_of("pi"))] ==
          "stable cycle around (0,0)");

    const auto h2 = parse_scenario(presets.at("example4.2-het2"));
    CHECK(h2.theta_bracket->first == 1.1);
    CHECK(h2.theta_bracket->second == 1.2);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_scenario("bogus line\n"), ScenarioParseError);

    try {
        parse_scenario("[elements]\nbefore 1 2\nafter 1 2\n[order]\nbefore 1<\n");
        FAIL("expected a parse error");
    } catch (const ScenarioParseError& ex) {
        CHECK(ex.line == 5);
        CHECK(std::string(ex.what()).find("line 5") != std::string::npos);
    }

    // unknown scope
    CHECK_THROWS_AS(parse_scenario("[elements]\nmiddle 1 2\n"), ScenarioParseError);
    // bad index degree
    CHECK_THROWS_AS(
        parse_scenario("[elements]\nbefore 1\nafter 1\n[index]\nbefore 1:7\nafter 1:0\n"),
        ScenarioParseError);
    // missing decomposition
    CHECK_THROWS_AS(parse_scenario("[elements]\nbefore 1\n[index]\nbefore 1:0\n"),
                    ScenarioParseError);
}

TEST_CASE("scenario with inconsistent indices fails validation naming the axiom") {
    // the delta entry runs against the declared order
    const std::string text = R"(name bad
[elements]
before 1 2
after 1 2
[order]
before 1<2
after 1<2
[index]
before 1:2 2:1
after 1:0 2:1
[delta]
before 1->2:2
[bracket]
0 1
)";
    const auto s = parse_scenario(text);
    const auto r = run_scenario(s);
    CHECK_FALSE(r.before_report.valid);
    REQUIRE(!r.before_report.violations.empty());
    CHECK(r.before_report.violations[0].find("axiom (a)") != std::string::npos);
    CHECK(r.after_report.valid);
}

TEST_CASE("round trip through a hand-written scenario") {
    const std::string text = R"(
name two-saddles
[elements]
before a b
after a b
[order]
before a<b
after a<b
[index]
before a:0 b:1
after a:0 b:1
[delta]
before b->a:1
after b->a:1
[constraints]
iso a:0
iso b:1
[bracket]
-1 1
)";
    const auto s = parse_scenario(text);
    CHECK(s.delta_before.get("a", "b", 1));
    const auto r = run_scenario(s);
    CHECK(r.before_report.valid);
    CHECK(r.after_report.valid);
    // both diagonal entries constrained iso; equation forces nothing else
    CHECK(r.transition.forced.size() == 2);
}
