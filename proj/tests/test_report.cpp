#include <doctest.h>

#include "contexture/report.hpp"

using namespace contexture;

namespace {

Scenario pr_box() {
    ExpectationVector e;
    e.marginals = {{"A1", 0}, {"A2", 0}, {"B1", 0}, {"B2", 0}};
    e.pair_correlations = {{"11", 1}, {"12", 1}, {"21", 1}, {"22", -1}};
    return from_expectations(ScenarioKind::EprBell4, e);
}

}  // namespace

TEST_CASE("analyze runs the full pipeline") {
    const AnalysisReport report = analyze(pr_box());
    CHECK(report.no_signaling.ok);
    REQUIRE(report.s_value.has_value());
    CHECK(*report.s_value == Rational(4));
    CHECK(report.gamma_min.value == Rational(1));
    CHECK(report.delta_min.value == Rational(1));
    CHECK(report.equal);
    CHECK(report_consistent(report));
}

TEST_CASE("analyze refuses signaling input with a violation report") {
    Scenario s = pr_box();
    s.tables[0].probs = {rational(3, 4), Rational(0), Rational(0), rational(1, 4)};
    try {
        analyze(s);
        FAIL("expected SignalingError");
    } catch (const SignalingError& e) {
        REQUIRE_FALSE(e.report().violations.empty());
        CHECK(std::string(e.what()).find("signaling") != std::string::npos);
    }
}

TEST_CASE("json report embeds a reloadable scenario") {
    const AnalysisReport report = analyze(pr_box());
    const std::string j1 = report_to_json(report, false);
    const Scenario reloaded = scenario_from_json_text(j1);  // wrapper accepted
    const std::string j2 = report_to_json(analyze(reloaded), false);
    CHECK(j1 == j2);
}

TEST_CASE("witnesses appear only on request") {
    const AnalysisReport report = analyze(pr_box());
    CHECK(report_to_json(report, false).find("witness") == std::string::npos);
    CHECK(report_to_json(report, true).find("witness") != std::string::npos);
    CHECK(report_to_text(report, true).find("mu(") != std::string::npos);
}

TEST_CASE("text report prints rationals with decimal hints") {
    CHECK(pretty_rational(rational(2, 5)) == "2/5 (~ 0.400000)");
    CHECK(pretty_rational(Rational(1)) == "1 (~ 1.000000)");
    const std::string text = report_to_text(analyze(pr_box()), false);
    CHECK(text.find("S_CHSH: 4 (~ 4.000000)") != std::string::npos);
    CHECK(text.find("gamma_min == delta_min: yes") != std::string::npos);
}
