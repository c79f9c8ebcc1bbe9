#include <doctest.h>

#include "contexture/polyhedra.hpp"
#include "contexture/splitmix.hpp"
#include "naive_fm.hpp"

using namespace contexture;
using contexture::testing::naive_eliminate;

namespace {

LinearExpr var(const std::string& name, const Rational& c = Rational(1)) {
    return LinearExpr::variable(name, c);
}

}  // namespace

TEST_CASE("rows are normalized to coprime integer coefficients") {
    ConstraintSystem sys({"x", "y"});
    sys.add_leq(var("x", rational(2, 3)) + var("y", rational(4, 3)), Rational(2));
    REQUIRE(sys.rows().size() == 1);
    CHECK(sys.rows()[0].lhs.coefficient("x") == Rational(1));
    CHECK(sys.rows()[0].lhs.coefficient("y") == Rational(2));
    CHECK(sys.rows()[0].rhs == Rational(3));
}

TEST_CASE("trivially true rows vanish, contradictions collapse") {
    ConstraintSystem sys({"x"});
    sys.add_leq(LinearExpr(Rational(0)), Rational(5));
    CHECK(sys.rows().empty());
    sys.add_leq(LinearExpr(Rational(1)), Rational(0));
    CHECK(sys.trivially_infeasible());
}

TEST_CASE("dedupe keeps the tightest bound per normal") {
    ConstraintSystem sys({"x"});
    sys.add_leq(var("x"), Rational(3));
    sys.add_leq(var("x"), Rational(1));
    sys.add_leq(var("x", Rational(2)), Rational(6));
    sys.dedupe();
    REQUIRE(sys.rows().size() == 1);
    CHECK(sys.rows()[0].rhs == Rational(1));
}

TEST_CASE("parity sign vectors and signed-max expansion sizes") {
    CHECK(parity_sign_vectors(3, SignParity::Even).size() == 4);
    CHECK(parity_sign_vectors(3, SignParity::Odd).size() == 4);
    CHECK(parity_sign_vectors(4, SignParity::Even).size() == 8);
    for (const auto& sv : parity_sign_vectors(4, SignParity::Odd)) {
        int minus = 0;
        for (int s : sv) minus += s < 0;
        CHECK(minus % 2 == 1);
    }
    SignedMaxSpec spec;
    spec.terms = {"a", "b", "c", "d"};
    spec.parity = SignParity::Odd;
    spec.bound_expr = LinearExpr(Rational(6));
    CHECK(expand_signed_max(spec, {"a", "b", "c", "d"}).rows().size() == 8);
}

TEST_CASE("eliminating y from the unit diamond leaves the x interval") {
    ConstraintSystem sys({"x", "y"});
    sys.add_leq(var("x") + var("y"), Rational(1));
    sys.add_leq(var("x") - var("y"), Rational(1));
    sys.add_leq(var("x", Rational(-1)) + var("y"), Rational(1));
    sys.add_leq(var("x", Rational(-1)) - var("y"), Rational(1));
    const ConstraintSystem proj = fm_eliminate(sys, {"y"});
    ConstraintSystem interval({"x"});
    interval.add_leq(var("x"), Rational(1));
    interval.add_leq(var("x", Rational(-1)), Rational(1));
    CHECK(systems_equivalent(proj, interval));
}

TEST_CASE("equalities are eliminated by substitution") {
    ConstraintSystem sys({"x", "y"});
    sys.add_eq(var("x") + var("y"), Rational(2));
    sys.add_leq(var("y"), Rational(1));
    const ConstraintSystem proj = fm_eliminate(sys, {"y"});
    ConstraintSystem expected({"x"});
    expected.add_leq(var("x", Rational(-1)), Rational(-1));  // x >= 1
    CHECK(systems_equivalent(proj, expected));
}

TEST_CASE("redundant rows are dropped, implications certified") {
    ConstraintSystem sys({"x", "y"});
    sys.add_leq(var("x"), Rational(1));
    sys.add_leq(var("y"), Rational(1));
    sys.add_leq(var("x") + var("y"), Rational(5));  // slack everywhere
    const ConstraintSystem pruned = remove_redundant(sys);
    CHECK(pruned.rows().size() == 2);

    ConstraintRow implied;
    implied.lhs = var("x") + var("y");
    implied.rhs = Rational(2);
    CHECK(system_implies(pruned, implied));
    implied.rhs = rational(3, 2);
    CHECK_FALSE(system_implies(pruned, implied));
}

TEST_CASE("systems_equivalent sees through redundancy and scaling") {
    ConstraintSystem a({"x", "y"});
    a.add_leq(var("x"), Rational(1));
    a.add_leq(var("y"), Rational(1));
    ConstraintSystem b({"x", "y"});
    b.add_leq(var("x", Rational(3)), Rational(3));
    b.add_leq(var("y"), Rational(1));
    b.add_leq(var("x") + var("y"), Rational(2));
    CHECK(systems_equivalent(a, b));
    b.add_leq(var("x") + var("y"), Rational(1));
    CHECK_FALSE(systems_equivalent(a, b));
}

TEST_CASE("fm_eliminate agrees with naive elimination on random systems") {
    SplitMix64 rng(20240817);
    const std::vector<std::string> names = {"u", "v", "w"};
    int infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        ConstraintSystem sys(names);
        const int rows = 3 + static_cast<int>(rng.next_below(4));
        for (int r = 0; r < rows; ++r) {
            LinearExpr lhs;
            for (const auto& n : names) {
                const int c = static_cast<int>(rng.next_below(6)) - 3;
                if (c != 0) lhs.add_term(n, Rational(c));
            }
            const int b = static_cast<int>(rng.next_below(8)) - 2;
            if (rng.next_below(5) == 0) sys.add_eq(std::move(lhs), Rational(b));
            else sys.add_leq(std::move(lhs), Rational(b));
        }
        const std::string victim = names[trial % names.size()];
        const ConstraintSystem fast = fm_eliminate(sys, {victim});
        const ConstraintSystem slow = naive_eliminate(sys, victim);
        if (fast.trivially_infeasible()) ++infeasible_seen;
        CHECK(systems_equivalent(fast, slow));
    }
    CHECK(infeasible_seen < 120);  // corpus is not degenerate
}
