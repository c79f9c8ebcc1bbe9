#include "contexture/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace contexture {

namespace {

// Dense exact tableau. Row 0 holds reduced costs with -z in the rhs slot;
// rows 1..m are the constraints with an identity basis maintained throughout.
struct Tableau {
    std::vector<std::vector<Rational>> t;  // (m+1) x (n+1), last column = rhs
    std::vector<int> basis;                // basis[i] = column basic in row i+1
    int m = 0;
    int n = 0;

    void pivot(int row, int col) {
        auto& pr = t[row];
        const Rational piv = pr[col];
        if (!is_zero(piv - 1)) {
            const Rational inv = Rational(1) / piv;
            for (auto& x : pr)
                if (!is_zero(x)) x *= inv;
        }
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const Rational factor = t[i][col];
            if (is_zero(factor)) continue;
            auto& ri = t[i];
            for (int j = 0; j <= n; ++j)
                if (!is_zero(pr[j])) ri[j] -= factor * pr[j];
        }
        basis[row - 1] = col;
    }

    // Bland's rule: entering column is the lowest-index negative reduced cost;
    // leaving row is the min-ratio row, ties broken by lowest basis column.
    // Returns Optimal or Unbounded.
    LpStatus run(int usable_cols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < usable_cols; ++j) {
                if (is_negative(t[0][j])) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            int leave = -1;
            Rational best_ratio;
            for (int i = 1; i <= m; ++i) {
                const Rational& a = t[i][enter];
                if (sgn(a) <= 0) continue;
                Rational ratio = t[i][n] / a;
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i - 1] < basis[leave - 1])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

struct Column {
    std::string name;
    Rational sign;  // +1 for the variable or its positive part, -1 for the negative part
};

}  // namespace

LpResult lp_solve(const LpProblem& problem) {
    // Deterministic variable order: sorted names.
    std::set<std::string> vars;
    for (const auto& [name, c] : problem.objective.coefficients()) vars.insert(name);
    for (const auto& con : problem.equalities)
        for (const auto& [name, c] : con.expr.coefficients()) vars.insert(name);
    for (const auto& con : problem.inequalities)
        for (const auto& [name, c] : con.expr.coefficients()) vars.insert(name);
    for (const auto& name : problem.nonnegative_vars) vars.insert(name);
    if (vars.empty()) {
        // Variable-free problem: every constraint is a constant comparison.
        LpResult r;
        for (const auto& con : problem.equalities)
            if (con.expr.constant() != con.rhs) return r;  // Infeasible
        for (const auto& con : problem.inequalities)
            if (con.expr.constant() < con.rhs) return r;
        r.status = LpStatus::Optimal;
        r.value = problem.objective.constant();
        return r;
    }

    // Free variables are split x = x+ - x-.
    std::vector<Column> columns;
    std::map<std::string, std::pair<int, int>> var_cols;  // name -> (pos col, neg col or -1)
    for (const auto& name : vars) {
        int pos = static_cast<int>(columns.size());
        columns.push_back({name, Rational(1)});
        int neg = -1;
        if (!problem.nonnegative_vars.count(name)) {
            neg = static_cast<int>(columns.size());
            columns.push_back({name, Rational(-1)});
        }
        var_cols[name] = {pos, neg};
    }
    const int struct_cols = static_cast<int>(columns.size());

    struct Row {
        std::vector<Rational> a;
        Rational b;
        bool inequality;
    };
    std::vector<Row> rows;
    auto add_row = [&](const LpConstraint& con, bool inequality) {
        Row r;
        r.a.assign(struct_cols, Rational(0));
        r.b = con.rhs - con.expr.constant();
        r.inequality = inequality;
        for (const auto& [name, c] : con.expr.coefficients()) {
            auto [pos, neg] = var_cols.at(name);
            r.a[pos] += c;
            if (neg >= 0) r.a[neg] -= c;
        }
        rows.push_back(std::move(r));
    };
    for (const auto& con : problem.equalities) add_row(con, false);
    for (const auto& con : problem.inequalities) add_row(con, true);

    const int m = static_cast<int>(rows.size());
    const int num_surplus = static_cast<int>(problem.inequalities.size());
    // Column layout: structural | surplus | artificial | rhs.
    const int n = struct_cols + num_surplus + m;

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.basis.assign(m, 0);
    tab.t.assign(m + 1, std::vector<Rational>(n + 1, Rational(0)));

    int surplus_at = struct_cols;
    for (int i = 0; i < m; ++i) {
        auto& row = tab.t[i + 1];
        for (int j = 0; j < struct_cols; ++j) row[j] = rows[i].a[j];
        Rational rhs = rows[i].b;
        Rational surplus_coeff(-1);  // expr - s = rhs, s >= 0
        if (rows[i].inequality) {
            row[surplus_at] = surplus_coeff;
        }
        if (is_negative(rhs)) {
            for (int j = 0; j <= n; ++j)
                if (!is_zero(row[j])) row[j] = -row[j];
            rhs = -rhs;
        }
        if (rows[i].inequality) ++surplus_at;
        row[n] = rhs;
        const int art = struct_cols + num_surplus + i;
        row[art] = 1;
        tab.basis[i] = art;
    }

    // Phase 1: minimize the sum of artificials.
    for (int i = 0; i < m; ++i) {
        const auto& row = tab.t[i + 1];
        for (int j = 0; j <= n; ++j)
            if (!is_zero(row[j])) tab.t[0][j] -= row[j];
    }
    for (int i = 0; i < m; ++i) tab.t[0][struct_cols + num_surplus + i] = 0;

    if (tab.run(n) != LpStatus::Optimal)
        throw std::logic_error("lp_solve: phase 1 cannot be unbounded");
    if (!is_zero(tab.t[0][n])) return {LpStatus::Infeasible, Rational(0), {}};

    // Drive leftover artificials out of the basis; a row with no nonartificial
    // entry is redundant and is zeroed out.
    const int first_art = struct_cols + num_surplus;
    for (int i = 1; i <= m; ++i) {
        if (tab.basis[i - 1] < first_art) continue;
        int col = -1;
        for (int j = 0; j < first_art; ++j) {
            if (!is_zero(tab.t[i][j])) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            tab.pivot(i, col);
        } else {
            for (int j = 0; j <= n; ++j) tab.t[i][j] = 0;
        }
    }

    // Phase 2: original objective; artificial columns are off limits.
    for (int j = 0; j <= n; ++j) tab.t[0][j] = 0;
    std::vector<Rational> cost(n, Rational(0));
    for (const auto& [name, c] : problem.objective.coefficients()) {
        auto [pos, neg] = var_cols.at(name);
        cost[pos] += c;
        if (neg >= 0) cost[neg] -= c;
    }
    for (int j = 0; j < n; ++j) tab.t[0][j] = cost[j];
    for (int i = 1; i <= m; ++i) {
        const int bj = tab.basis[i - 1];
        if (bj >= first_art) continue;  // zeroed redundant row
        const Rational cb = cost[bj];
        if (is_zero(cb)) continue;
        for (int j = 0; j <= n; ++j)
            if (!is_zero(tab.t[i][j])) tab.t[0][j] -= cb * tab.t[i][j];
    }
    for (int j = first_art; j < n; ++j) tab.t[0][j] = 0;

    const LpStatus phase2 = tab.run(first_art);
    if (phase2 == LpStatus::Unbounded) return {LpStatus::Unbounded, Rational(0), {}};

    LpResult result;
    result.status = LpStatus::Optimal;
    std::vector<Rational> col_value(n, Rational(0));
    for (int i = 1; i <= m; ++i) col_value[tab.basis[i - 1]] = tab.t[i][n];
    for (const auto& [name, cols] : var_cols) {
        Rational v = col_value[cols.first];
        if (cols.second >= 0) v -= col_value[cols.second];
        result.witness[name] = v;
    }
    result.value = problem.objective.evaluate(result.witness);

    // Fail closed: the witness must satisfy every constraint exactly.
    for (const auto& con : problem.equalities)
        if (con.expr.evaluate(result.witness) != con.rhs)
            throw std::logic_error("lp_solve: witness violates an equality");
    for (const auto& con : problem.inequalities)
        if (con.expr.evaluate(result.witness) < con.rhs)
            throw std::logic_error("lp_solve: witness violates an inequality");
    for (const auto& name : problem.nonnegative_vars)
        if (result.witness.count(name) && is_negative(result.witness.at(name)))
            throw std::logic_error("lp_solve: witness violates nonnegativity");
    return result;
}

bool lp_feasible(const LpProblem& problem) {
    LpProblem p = problem;
    p.objective = LinearExpr();
    return lp_solve(p).status == LpStatus::Optimal;
}

}  // namespace contexture
