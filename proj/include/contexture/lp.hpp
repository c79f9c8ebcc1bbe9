#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "contexture/linear_expr.hpp"

namespace contexture {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// expr == rhs (equality) or expr >= rhs (inequality).
struct LpConstraint {
    LinearExpr expr;
    Rational rhs;
};

struct LpProblem {
    LinearExpr objective;  // minimized
    std::vector<LpConstraint> equalities;
    std::vector<LpConstraint> inequalities;
    std::set<std::string> nonnegative_vars;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;                          // meaningful iff Optimal
    std::map<std::string, Rational> witness;  // meaningful iff Optimal
};

// Exact two-phase simplex with Bland's anti-cycling rule. Deterministic:
// identical input produces an identical result, witness included. Variables
// not listed in nonnegative_vars are free (split internally). The returned
// witness is re-checked against every constraint before returning.
LpResult lp_solve(const LpProblem& problem);

// True iff the constraint set is nonempty; the objective is ignored.
bool lp_feasible(const LpProblem& problem);

}  // namespace contexture
