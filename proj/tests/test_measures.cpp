#include <doctest.h>

#include <algorithm>

#include "contexture/measures.hpp"
#include "contexture/random_scenarios.hpp"
#include "contexture/splitmix.hpp"

using namespace contexture;

namespace {

Scenario epr_point(const Rational& c11, const Rational& c12, const Rational& c21,
                   const Rational& c22) {
    ExpectationVector e;
    e.marginals = {{"A1", 0}, {"A2", 0}, {"B1", 0}, {"B2", 0}};
    e.pair_correlations = {{"11", c11}, {"12", c12}, {"21", c21}, {"22", c22}};
    return from_expectations(ScenarioKind::EprBell4, e);
}

Scenario lg_point(const Rational& c12, const Rational& c13, const Rational& c23) {
    ExpectationVector e;
    e.marginals = {{"Q1", 0}, {"Q2", 0}, {"Q3", 0}};
    e.pair_correlations = {{"12", c12}, {"13", c13}, {"23", c23}};
    return from_expectations(ScenarioKind::LeggettGarg3, e);
}

}  // namespace

TEST_CASE("signed-max identities") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(3));
        std::vector<Rational> xs;
        Rational abs_sum(0);
        Rational min_abs;
        for (int i = 0; i < n; ++i) {
            const Rational x = rational(static_cast<long>(rng.next_below(20)) - 10,
                                        1 + static_cast<long>(rng.next_below(6)));
            xs.push_back(x);
            abs_sum += rational_abs(x);
            if (i == 0 || rational_abs(x) < min_abs) min_abs = rational_abs(x);
        }
        const Rational s0 = s_signed_max(xs, SignParity::Even);
        const Rational s1 = s_signed_max(xs, SignParity::Odd);
        CHECK(std::max(s0, s1) == abs_sum);
        CHECK(rational_abs(s0 - s1) == 2 * min_abs);
    }
}

TEST_CASE("PR box maximizes both measures") {
    const Scenario pr = epr_point(1, 1, 1, -1);
    CHECK(s_chsh(pr) == Rational(4));
    const MeasureResult g = gamma_min_lp(pr);
    const MeasureResult d = delta_min_lp(pr);
    CHECK(g.value == Rational(1));
    CHECK(d.value == Rational(1));
    CHECK(g.agree);
    CHECK(d.agree);
    CHECK(gamma_min_formula(pr) == Rational(1));
    CHECK(delta_min_formula(pr) == Rational(1));
    CHECK_FALSE(proper_jpd_feasible(pr));
}

TEST_CASE("rational Tsirelson-like point") {
    const Rational q(7, 10);
    const Scenario s = epr_point(q, q, q, -q);
    CHECK(s_chsh(s) == rational(14, 5));
    CHECK(gamma_min_lp(s).value == rational(2, 5));
    CHECK(delta_min_lp(s).value == rational(2, 5));
}

TEST_CASE("classical points are free of contextuality") {
    const Scenario lg = lg_point(1, 1, 1);
    CHECK(s_lg(lg) == Rational(1));
    CHECK(gamma_min_lp(lg).value == Rational(0));
    CHECK(delta_min_lp(lg).value == Rational(0));
    CHECK(proper_jpd_feasible(lg));

    const Scenario epr = epr_point(rational(1, 2), rational(1, 2), rational(1, 2), rational(1, 2));
    CHECK(gamma_min_lp(epr).value == Rational(0));
    CHECK(proper_jpd_feasible(epr));
}

TEST_CASE("maximally contextual LG point") {
    const Scenario s = lg_point(-1, -1, -1);
    CHECK(s_lg(s) == Rational(3));
    CHECK(gamma_min_lp(s).value == Rational(1));
    CHECK(delta_min_lp(s).value == Rational(1));
}

TEST_CASE("witnesses reproduce the observed tables") {
    const Scenario s = epr_point(rational(3, 5), rational(1, 5), rational(-2, 5), rational(4, 5));
    const MeasureResult g = gamma_min_lp(s);
    REQUIRE(g.quasi.has_value());
    // Total mass sums to 1 even with negative atoms.
    Rational total(0), l1(0);
    for (const auto& [w, mu] : g.quasi->atoms) {
        total += mu;
        l1 += rational_abs(mu);
    }
    CHECK(total == Rational(1));
    CHECK(l1 - 1 == g.value);

    const MeasureResult d = delta_min_lp(s);
    REQUIRE(d.coupling.has_value());
    Rational mass(0);
    for (const auto& [v, lam] : d.coupling->atoms) {
        CHECK_FALSE(is_negative(lam));
        mass += lam;
    }
    CHECK(mass == Rational(1));
}

TEST_CASE("both measures and closed forms agree on random scenarios") {
    for (auto kind : {ScenarioKind::LeggettGarg3, ScenarioKind::EprBell4}) {
        RandomSpec spec;
        spec.kind = kind;
        spec.count = 60;
        spec.seed = 99;
        for (int i = 0; i < spec.count; ++i) {
            const Scenario s = random_scenario(spec, i);
            const MeasureResult g = gamma_min_lp(s);
            const MeasureResult d = delta_min_lp(s);
            CHECK(g.value == d.value);
            CHECK(g.value == gamma_min_formula(s));
            CHECK(d.value == delta_min_formula(s));
            CHECK(g.agree);
            CHECK(d.agree);
        }
    }
}
