#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contexture/lp.hpp"

namespace contexture {

enum class Relation { LessEq, Eq };

struct ConstraintRow {
    LinearExpr lhs;
    Relation rel = Relation::LessEq;
    Rational rhs;
    std::string label;  // provenance tag, carried through transformations

    bool operator==(const ConstraintRow& other) const {
        return lhs == other.lhs && rel == other.rel && rhs == other.rhs;
    }
};

// Conjunction of linear rows over a fixed ordered variable set. Rows are kept
// in a normalized form: integer coefficients with gcd 1, constant folded into
// the rhs, trivially-true rows dropped. An infeasible system is represented
// by the single row 0 <= -1.
class ConstraintSystem {
  public:
    ConstraintSystem() = default;
    explicit ConstraintSystem(std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<ConstraintRow>& rows() const { return rows_; }

    bool has_variable(const std::string& name) const;

    // Normalizes and appends; trivially-true rows are dropped, syntactic
    // duplicates are not (use dedupe()).
    void add_row(ConstraintRow row);
    void add_leq(LinearExpr lhs, Rational rhs, std::string label = {});
    void add_eq(LinearExpr lhs, Rational rhs, std::string label = {});

    void dedupe();

    bool trivially_infeasible() const;

    // True iff the point satisfies every row exactly.
    bool satisfies(const std::map<std::string, Rational>& point) const;

    // The rows as an LpProblem constraint set (all variables free).
    LpProblem as_lp(LinearExpr objective = {}) const;

  private:
    std::vector<std::string> variables_;
    std::vector<ConstraintRow> rows_;
};

enum class SignParity { Even, Odd };

// max over parity-restricted sign vectors of terms, bounded above by
// bound_expr: one row per sign vector, 2^(n-1) in total.
struct SignedMaxSpec {
    std::vector<std::string> terms;
    SignParity parity = SignParity::Even;
    LinearExpr bound_expr;
};

// All sign vectors over n slots with the given number of minus signs modulo 2.
std::vector<std::vector<int>> parity_sign_vectors(int n, SignParity parity);

ConstraintSystem expand_signed_max(const SignedMaxSpec& spec,
                                   const std::vector<std::string>& variables,
                                   const std::string& label = {});

// Appends expanded rows of spec to an existing system.
void append_signed_max(ConstraintSystem& system, const SignedMaxSpec& spec,
                       const std::string& label = {});

// Exact projection: eliminates vars (in the given order) so that the result's
// solution set is the projection of the input's. Equalities mentioning an
// eliminated variable are used as Gaussian substitutions; the rest is textbook
// Fourier-Motzkin with LP redundancy pruning after each variable.
ConstraintSystem fm_eliminate(const ConstraintSystem& system,
                              const std::vector<std::string>& vars);

// Drops every row implied by the remaining ones (LP certificate per row).
ConstraintSystem remove_redundant(const ConstraintSystem& system);

// True iff each row of a is implied by b and vice versa. Throws on a
// variable-set mismatch.
bool systems_equivalent(const ConstraintSystem& a, const ConstraintSystem& b);

// True iff row holds everywhere on the system's solution set.
bool system_implies(const ConstraintSystem& system, const ConstraintRow& row);

// Maximize expr over the system (all variables free).
LpResult maximize_over(const ConstraintSystem& system, const LinearExpr& expr);

}  // namespace contexture
