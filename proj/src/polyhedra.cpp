#include "contexture/polyhedra.hpp"

#include <algorithm>
#include <stdexcept>

namespace contexture {

namespace {

// Scale so coefficients are integers with gcd 1; equality rows additionally
// get a positive leading coefficient. Returns false for rows that are
// trivially true after normalization (to be dropped).
bool normalize_row(ConstraintRow& row, const std::vector<std::string>& var_order) {
    row.rhs -= row.lhs.constant();
    LinearExpr lhs;
    for (const auto& [name, c] : row.lhs.coefficients()) lhs.add_term(name, c);
    row.lhs = lhs;

    if (row.lhs.empty()) {
        if (row.rel == Relation::LessEq) {
            if (!is_negative(row.rhs)) return false;  // 0 <= c, c >= 0
            row.rhs = -1;                             // canonical infeasible row
        } else {
            if (is_zero(row.rhs)) return false;
            row.rel = Relation::LessEq;
            row.rhs = -1;
        }
        return true;
    }

    mpz_class den_lcm = 1;
    for (const auto& [name, c] : row.lhs.coefficients()) den_lcm = lcm(den_lcm, c.get_den());
    mpz_class num_gcd = 0;
    for (const auto& [name, c] : row.lhs.coefficients())
        num_gcd = gcd(num_gcd, mpz_class(c.get_num() * (den_lcm / c.get_den())));
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();

    if (row.rel == Relation::Eq) {
        // Positive leading coefficient in the system's variable order.
        for (const auto& v : var_order) {
            const Rational c = row.lhs.coefficient(v);
            if (!is_zero(c)) {
                if (is_negative(c)) scale = -scale;
                break;
            }
        }
    }
    row.lhs *= scale;
    row.rhs *= scale;
    return true;
}

std::string row_key(const ConstraintRow& row) {
    std::string key = row.rel == Relation::Eq ? "=" : "<";
    for (const auto& [name, c] : row.lhs.coefficients()) key += name + ":" + to_string(c) + ";";
    return key;
}

// Dual implication certificate. Precondition: rows describe a feasible
// system. The tested row is implied iff some nonnegative combination of the
// inequality rows (free multipliers for equalities) reproduces its
// coefficients with a combined rhs not exceeding the tested rhs.
bool implied_by_feasible(const std::vector<ConstraintRow>& rows, const LinearExpr& lhs,
                         const Rational& rhs) {
    LpProblem dual;
    LinearExpr rhs_combo;
    std::map<std::string, LinearExpr> coeff_combo;
    for (size_t i = 0; i < rows.size(); ++i) {
        const std::string y = "y" + std::to_string(i);
        if (rows[i].rel == Relation::LessEq) dual.nonnegative_vars.insert(y);
        rhs_combo.add_term(y, rows[i].rhs);
        for (const auto& [name, c] : rows[i].lhs.coefficients())
            coeff_combo[name].add_term(y, c);
    }
    std::set<std::string> vars;
    for (const auto& [name, combo] : coeff_combo) vars.insert(name);
    for (const auto& [name, c] : lhs.coefficients()) vars.insert(name);
    for (const auto& name : vars) {
        auto it = coeff_combo.find(name);
        LinearExpr combo = it == coeff_combo.end() ? LinearExpr() : it->second;
        dual.equalities.push_back({std::move(combo), lhs.coefficient(name)});
    }
    // rhs_combo <= rhs, i.e. -rhs_combo >= -rhs.
    LinearExpr neg = LinearExpr() - rhs_combo;
    dual.inequalities.push_back({std::move(neg), -rhs});
    if (dual.nonnegative_vars.empty() && rows.empty()) {
        // No rows at all: only the zero combination, so lhs must be zero.
        return lhs.empty() && !is_negative(rhs);
    }
    return lp_feasible(dual);
}

bool implied_row_by_feasible(const std::vector<ConstraintRow>& rows, const ConstraintRow& row) {
    if (!implied_by_feasible(rows, row.lhs, row.rhs)) return false;
    if (row.rel == Relation::Eq) {
        LinearExpr neg = LinearExpr() - row.lhs;
        if (!implied_by_feasible(rows, neg, -row.rhs)) return false;
    }
    return true;
}

std::vector<ConstraintRow> prune_rows(const std::vector<ConstraintRow>& input) {
    std::vector<ConstraintRow> kept = input;
    // Scan from the back so earlier (typically structural) rows win ties.
    for (size_t idx = kept.size(); idx-- > 0;) {
        if (kept[idx].rel == Relation::Eq) continue;
        std::vector<ConstraintRow> others;
        others.reserve(kept.size() - 1);
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != idx) others.push_back(kept[j]);
        if (implied_row_by_feasible(others, kept[idx])) kept.erase(kept.begin() + idx);
    }
    return kept;
}

}  // namespace

ConstraintSystem::ConstraintSystem(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

bool ConstraintSystem::has_variable(const std::string& name) const {
    return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

void ConstraintSystem::add_row(ConstraintRow row) {
    for (const auto& [name, c] : row.lhs.coefficients())
        if (!has_variable(name))
            throw std::invalid_argument("ConstraintSystem: unknown variable " + name);
    if (!normalize_row(row, variables_)) return;
    rows_.push_back(std::move(row));
}

void ConstraintSystem::add_leq(LinearExpr lhs, Rational rhs, std::string label) {
    add_row({std::move(lhs), Relation::LessEq, std::move(rhs), std::move(label)});
}

void ConstraintSystem::add_eq(LinearExpr lhs, Rational rhs, std::string label) {
    add_row({std::move(lhs), Relation::Eq, std::move(rhs), std::move(label)});
}

void ConstraintSystem::dedupe() {
    // Identical normalized lhs: keep the tightest rhs.
    std::map<std::string, size_t> best;
    std::vector<ConstraintRow> out;
    for (const auto& row : rows_) {
        const std::string key = row_key(row);
        auto it = best.find(key);
        if (it == best.end()) {
            best[key] = out.size();
            out.push_back(row);
        } else if (row.rel == Relation::LessEq && row.rhs < out[it->second].rhs) {
            out[it->second] = row;
        } else if (row.rel == Relation::Eq && row.rhs != out[it->second].rhs) {
            out[it->second] = {LinearExpr(), Relation::LessEq, Rational(-1), {}};
        }
    }
    rows_ = std::move(out);
}

bool ConstraintSystem::trivially_infeasible() const {
    for (const auto& row : rows_)
        if (row.lhs.empty()) return true;  // only 0 <= -1 survives normalization
    return false;
}

bool ConstraintSystem::satisfies(const std::map<std::string, Rational>& point) const {
    for (const auto& row : rows_) {
        const Rational v = row.lhs.evaluate(point);
        if (row.rel == Relation::Eq ? v != row.rhs : v > row.rhs) return false;
    }
    return true;
}

LpProblem ConstraintSystem::as_lp(LinearExpr objective) const {
    LpProblem lp;
    lp.objective = std::move(objective);
    for (const auto& row : rows_) {
        if (row.rel == Relation::Eq) {
            lp.equalities.push_back({row.lhs, row.rhs});
        } else {
            LinearExpr neg = LinearExpr() - row.lhs;
            lp.inequalities.push_back({std::move(neg), -row.rhs});
        }
    }
    return lp;
}

std::vector<std::vector<int>> parity_sign_vectors(int n, SignParity parity) {
    std::vector<std::vector<int>> result;
    for (int mask = 0; mask < (1 << n); ++mask) {
        const int minuses = __builtin_popcount(static_cast<unsigned>(mask));
        if ((minuses % 2 == 0) != (parity == SignParity::Even)) continue;
        std::vector<int> signs(n);
        for (int i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
        result.push_back(std::move(signs));
    }
    return result;
}

void append_signed_max(ConstraintSystem& system, const SignedMaxSpec& spec,
                       const std::string& label) {
    if (spec.terms.empty()) throw std::invalid_argument("append_signed_max: no terms");
    for (const auto& signs : parity_sign_vectors(static_cast<int>(spec.terms.size()), spec.parity)) {
        LinearExpr lhs;
        for (size_t i = 0; i < spec.terms.size(); ++i)
            lhs.add_term(spec.terms[i], Rational(signs[i]));
        lhs -= spec.bound_expr;
        system.add_leq(std::move(lhs), Rational(0), label);
    }
}

ConstraintSystem expand_signed_max(const SignedMaxSpec& spec,
                                   const std::vector<std::string>& variables,
                                   const std::string& label) {
    ConstraintSystem system(variables);
    append_signed_max(system, spec, label);
    return system;
}

ConstraintSystem fm_eliminate(const ConstraintSystem& system,
                              const std::vector<std::string>& vars) {
    for (const auto& v : vars)
        if (!system.has_variable(v))
            throw std::invalid_argument("fm_eliminate: unknown variable " + v);

    const bool feasible = !system.trivially_infeasible() && lp_feasible(system.as_lp());

    std::vector<std::string> remaining = system.variables();
    std::vector<ConstraintRow> rows = system.rows();

    for (const auto& v : vars) {
        std::vector<ConstraintRow> next;

        // An equality mentioning v acts as a Gaussian substitution.
        int subst = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].rel == Relation::Eq && rows[i].lhs.has_variable(v)) {
                subst = static_cast<int>(i);
                break;
            }
        }
        if (subst >= 0) {
            const ConstraintRow& eq = rows[subst];
            const Rational cv = eq.lhs.coefficient(v);
            // v = (rhs - rest) / cv
            LinearExpr vexpr(eq.rhs);
            vexpr -= eq.lhs;
            vexpr.add_term(v, cv);  // cancel v out of rest
            vexpr *= Rational(1) / cv;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (static_cast<int>(i) == subst) continue;
                ConstraintRow r = rows[i];
                const Rational c = r.lhs.coefficient(v);
                if (!is_zero(c)) {
                    r.lhs.add_term(v, -c);
                    r.lhs += c * vexpr;
                }
                next.push_back(std::move(r));
            }
        } else {
            std::vector<const ConstraintRow*> pos, neg;
            for (const auto& r : rows) {
                const Rational c = r.lhs.coefficient(v);
                if (is_zero(c)) {
                    next.push_back(r);
                } else if (is_negative(c)) {
                    neg.push_back(&r);
                } else {
                    pos.push_back(&r);
                }
            }
            for (const auto* p : pos) {
                const Rational cp = p->lhs.coefficient(v);
                for (const auto* q : neg) {
                    const Rational cq = q->lhs.coefficient(v);
                    // (-cq) * p + cp * q cancels v; both multipliers positive.
                    ConstraintRow combined;
                    combined.lhs = (-cq) * p->lhs + cp * q->lhs;
                    combined.rhs = (-cq) * p->rhs + cp * q->rhs;
                    next.push_back(std::move(combined));
                }
            }
        }

        remaining.erase(std::find(remaining.begin(), remaining.end(), v));
        ConstraintSystem stage(remaining);
        for (auto& r : next) stage.add_row(std::move(r));
        stage.dedupe();
        rows = feasible ? prune_rows(stage.rows()) : stage.rows();
    }

    ConstraintSystem out(remaining);
    for (auto& r : rows) out.add_row(std::move(r));
    return out;
}

ConstraintSystem remove_redundant(const ConstraintSystem& system) {
    ConstraintSystem out(system.variables());
    if (system.trivially_infeasible() || !lp_feasible(system.as_lp())) {
        out.add_leq(LinearExpr(), Rational(-1));
        return out;
    }
    ConstraintSystem deduped = system;
    deduped.dedupe();
    for (auto& r : prune_rows(deduped.rows())) out.add_row(std::move(r));
    return out;
}

bool system_implies(const ConstraintSystem& system, const ConstraintRow& row) {
    if (system.trivially_infeasible() || !lp_feasible(system.as_lp())) return true;
    ConstraintRow r = row;
    if (!normalize_row(r, system.variables())) return true;
    return implied_row_by_feasible(system.rows(), r);
}

bool systems_equivalent(const ConstraintSystem& a, const ConstraintSystem& b) {
    std::set<std::string> va(a.variables().begin(), a.variables().end());
    std::set<std::string> vb(b.variables().begin(), b.variables().end());
    if (va != vb) throw std::invalid_argument("systems_equivalent: variable sets differ");

    const bool fa = !a.trivially_infeasible() && lp_feasible(a.as_lp());
    const bool fb = !b.trivially_infeasible() && lp_feasible(b.as_lp());
    if (fa != fb) return false;
    if (!fa) return true;  // both empty

    for (const auto& row : a.rows())
        if (!implied_row_by_feasible(b.rows(), row)) return false;
    for (const auto& row : b.rows())
        if (!implied_row_by_feasible(a.rows(), row)) return false;
    return true;
}

LpResult maximize_over(const ConstraintSystem& system, const LinearExpr& expr) {
    LinearExpr neg = LinearExpr() - expr;
    LpResult r = lp_solve(system.as_lp(neg));
    if (r.status == LpStatus::Optimal) r.value = -r.value;
    return r;
}

}  // namespace contexture
