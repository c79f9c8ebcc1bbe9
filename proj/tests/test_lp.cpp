#include <doctest.h>

#include "contexture/lp.hpp"

using namespace contexture;

namespace {

LinearExpr var(const std::string& name, const Rational& c = Rational(1)) {
    return LinearExpr::variable(name, c);
}

}  // namespace

TEST_CASE("basic minimum over a box corner") {
    LpProblem p;
    p.objective = var("x") + var("y");
    p.inequalities.push_back({var("x"), Rational(1)});  // x >= 1
    p.inequalities.push_back({var("y"), Rational(2)});  // y >= 2
    p.nonnegative_vars = {"x", "y"};
    const LpResult r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(3));
    CHECK(r.witness.at("x") == Rational(1));
    CHECK(r.witness.at("y") == Rational(2));
}

TEST_CASE("infeasible system detected") {
    LpProblem p;
    p.objective = var("x");
    p.inequalities.push_back({var("x"), Rational(1)});          // x >= 1
    p.inequalities.push_back({var("x", Rational(-1)), Rational(0)});  // -x >= 0
    p.nonnegative_vars = {"x"};
    CHECK(lp_solve(p).status == LpStatus::Infeasible);
    CHECK_FALSE(lp_feasible(p));
}

TEST_CASE("unbounded objective detected") {
    LpProblem p;
    p.objective = var("x", Rational(-1));  // minimize -x, x >= 0 only
    p.nonnegative_vars = {"x"};
    CHECK(lp_solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("free variables go negative") {
    LpProblem p;
    p.objective = var("x");
    p.inequalities.push_back({var("x"), Rational(-5)});  // x >= -5, x free
    const LpResult r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(-5));
}

TEST_CASE("equalities and exact rational data") {
    LpProblem p;
    p.objective = var("x") + var("y", Rational(2));
    p.equalities.push_back({var("x") + var("y"), rational(2, 3)});
    p.inequalities.push_back({var("y"), rational(1, 3)});  // y >= 1/3
    p.nonnegative_vars = {"x", "y"};
    const LpResult r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(1));  // x = 1/3, y = 1/3
    CHECK(r.witness.at("x") + r.witness.at("y") == rational(2, 3));
}

TEST_CASE("witness satisfies every constraint") {
    LpProblem p;
    p.objective = var("x") - var("y");
    p.inequalities.push_back({var("x") + var("y", Rational(-2)), Rational(-4)});
    p.inequalities.push_back({var("x", Rational(3)) + var("y"), Rational(2)});
    p.equalities.push_back({var("x") + var("y") + var("z"), Rational(10)});
    p.nonnegative_vars = {"z"};
    const LpResult r = lp_solve(p);
    REQUIRE(r.status == LpStatus::Optimal);
    for (const auto& c : p.equalities) CHECK(c.expr.evaluate(r.witness) == c.rhs);
    for (const auto& c : p.inequalities) CHECK(c.expr.evaluate(r.witness) >= c.rhs);
}

TEST_CASE("determinism: identical problems give identical witnesses") {
    LpProblem p;
    p.objective = var("a") + var("b") + var("c");
    p.equalities.push_back({var("a") + var("b"), Rational(1)});
    p.inequalities.push_back({var("b") + var("c"), rational(1, 2)});
    p.nonnegative_vars = {"a", "b", "c"};
    const LpResult r1 = lp_solve(p);
    const LpResult r2 = lp_solve(p);
    REQUIRE(r1.status == LpStatus::Optimal);
    CHECK(r1.value == r2.value);
    CHECK(r1.witness == r2.witness);
}
