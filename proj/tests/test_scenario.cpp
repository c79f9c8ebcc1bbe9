#include <doctest.h>

#include "contexture/random_scenarios.hpp"
#include "contexture/scenario.hpp"

using namespace contexture;

TEST_CASE("canonical scaffolds are valid and no-signaling") {
    const Scenario lg = make_leggett_garg();
    CHECK(lg.properties.size() == 3);
    CHECK(lg.tables.size() == 3);
    CHECK(check_no_signaling(lg).ok);
    CHECK(lg.contexts_of("Q2") == std::vector<std::string>{"12", "23"});

    const Scenario epr = make_epr_bell();
    CHECK(epr.properties.size() == 4);
    CHECK(epr.tables.size() == 4);
    CHECK(check_no_signaling(epr).ok);
    CHECK(epr.table("21").left.property == "A2");
    CHECK(epr.table("21").right.property == "B1");
}

TEST_CASE("table accessors") {
    const Scenario lg = make_leggett_garg();
    const ObservedTable& t = lg.table("13");
    CHECK(t.prob(1, 1) == rational(1, 4));
    CHECK(t.left_marginal() == rational(1, 2));
    CHECK(t.correlation() == Rational(0));
    CHECK_THROWS(lg.table("99"));
}

TEST_CASE("validate rejects malformed tables") {
    Scenario s = make_leggett_garg();
    s.tables[0].probs[0] = rational(1, 2);  // sum now 5/4
    CHECK_THROWS(s.validate());

    Scenario neg = make_leggett_garg();
    neg.tables[1].probs[2] = rational(-1, 4);
    neg.tables[1].probs[3] = rational(3, 4);
    CHECK_THROWS(neg.validate());

    Scenario dup = make_epr_bell();
    dup.tables[1].context = "11";
    CHECK_THROWS(dup.validate());
}

TEST_CASE("signaling is detected and attributed") {
    Scenario s = make_epr_bell();
    // Shift A1's marginal in context 12 only.
    s.tables[1].probs = {rational(1, 2), rational(1, 4), Rational(0), rational(1, 4)};
    const auto report = check_no_signaling(s);
    REQUIRE_FALSE(report.ok);
    CHECK(report.violations[0].property == "A1");
    CHECK(report.violations[0].difference == rational(-1, 4));
}

TEST_CASE("expectation round trip on random scenarios") {
    RandomSpec spec;
    spec.kind = ScenarioKind::LeggettGarg3;
    spec.count = 50;
    spec.seed = 11;
    for (int i = 0; i < spec.count; ++i) {
        const Scenario s = random_scenario(spec, i);
        const Scenario back = from_expectations(spec.kind, to_expectations(s));
        for (size_t t = 0; t < s.tables.size(); ++t)
            CHECK(back.tables[t].probs == s.tables[t].probs);
    }
}

TEST_CASE("from_expectations enforces the trivial bounds") {
    ExpectationVector e;
    e.marginals = {{"Q1", Rational(1)}, {"Q2", Rational(-1)}, {"Q3", Rational(0)}};
    e.pair_correlations = {{"12", Rational(1)}, {"13", Rational(0)}, {"23", Rational(0)}};
    // <Q1 Q2> = 1 is impossible with <Q1> = 1, <Q2> = -1.
    CHECK_THROWS_WITH_AS(from_expectations(ScenarioKind::LeggettGarg3, e),
                         doctest::Contains("(Q1,Q2)"), std::invalid_argument);
    e.pair_correlations["12"] = Rational(-1);  // the forced value
    CHECK_NOTHROW(from_expectations(ScenarioKind::LeggettGarg3, e));
}

TEST_CASE("json round trip is byte stable") {
    RandomSpec spec;
    spec.kind = ScenarioKind::EprBell4;
    spec.count = 10;
    spec.seed = 3;
    for (int i = 0; i < spec.count; ++i) {
        const Scenario s = random_scenario(spec, i);
        const std::string text = scenario_to_json_text(s);
        CHECK(scenario_to_json_text(scenario_from_json_text(text)) == text);
    }
}

TEST_CASE("loader accepts a report wrapper and rejects junk") {
    const Scenario s = make_epr_bell();
    const std::string wrapped = "{\"scenario\": " + scenario_to_json_text(s) + "}";
    CHECK(scenario_to_json_text(scenario_from_json_text(wrapped)) == scenario_to_json_text(s));

    CHECK_THROWS(scenario_from_json_text("not json"));
    CHECK_THROWS(scenario_from_json_text("{\"kind\": \"epr-bell\"}"));
    CHECK_THROWS(load_scenario("/nonexistent/path.json"));

    // Rationals must be exact strings, not floats.
    std::string text = scenario_to_json_text(s);
    text.replace(text.find("\"1/4\""), 5, "0.25");
    CHECK_THROWS(scenario_from_json_text(text));
}

TEST_CASE("kind names round trip") {
    for (auto kind : {ScenarioKind::LeggettGarg3, ScenarioKind::EprBell4, ScenarioKind::GenericPairwise})
        CHECK(kind_from_name(kind_name(kind)) == kind);
    CHECK(kind_from_name("lg") == ScenarioKind::LeggettGarg3);
    CHECK(kind_from_name("epr") == ScenarioKind::EprBell4);
    CHECK_THROWS(kind_from_name("chsh"));
}
