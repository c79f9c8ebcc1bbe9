#include "contexture/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace contexture {

namespace {

// Bit i of mask set means slot i takes outcome -1.
int slot_sign(unsigned mask, int slot) { return (mask >> slot) & 1 ? -1 : 1; }

std::string atom_key(unsigned mask, int slots) {
    std::string key(slots, '+');
    for (int i = 0; i < slots; ++i)
        if ((mask >> i) & 1) key[i] = '-';
    return key;
}

std::string gamma_var(bool positive_part, unsigned mask) {
    return (positive_part ? "p+" : "p-") + std::to_string(mask);
}

std::string lambda_var(unsigned mask) { return "l" + std::to_string(mask); }

void require_no_signaling(const Scenario& s, const char* op) {
    const auto ns = check_no_signaling(s);
    if (!ns.ok)
        throw std::invalid_argument(std::string(op) + ": signaling scenario (property " +
                                    ns.violations.front().property + ")");
}

int property_slot(const Scenario& s, const std::string& property) {
    const auto it = std::find(s.properties.begin(), s.properties.end(), property);
    return static_cast<int>(it - s.properties.begin());
}

// Marginal-matching equalities of the negative-probability LP: for every
// observed cell, the mu-masses of all full outcomes extending it sum to the
// observed probability. These also force total mass 1.
void add_quasi_marginals(LpProblem& lp, const Scenario& s, bool signed_split) {
    const int n = static_cast<int>(s.properties.size());
    for (const auto& t : s.tables) {
        const int li = property_slot(s, t.left.property);
        const int ri = property_slot(s, t.right.property);
        for (int x : {+1, -1}) {
            for (int y : {+1, -1}) {
                LinearExpr sum;
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (slot_sign(mask, li) != x || slot_sign(mask, ri) != y) continue;
                    if (signed_split) {
                        sum.add_term(gamma_var(true, mask), Rational(1));
                        sum.add_term(gamma_var(false, mask), Rational(-1));
                    } else {
                        sum.add_term(gamma_var(true, mask), Rational(1));
                    }
                }
                lp.equalities.push_back({std::move(sum), t.prob(x, y)});
            }
        }
    }
}

std::optional<Rational> closed_form_for(const Scenario& s) {
    if (s.kind == ScenarioKind::LeggettGarg3 || s.kind == ScenarioKind::EprBell4)
        return gamma_min_formula(s);
    return std::nullopt;
}

}  // namespace

Rational s_signed_max(const std::vector<Rational>& values, SignParity parity) {
    if (values.empty()) throw std::invalid_argument("s_signed_max: empty list");
    const int n = static_cast<int>(values.size());
    std::optional<Rational> best;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int minuses = __builtin_popcount(mask);
        if ((minuses % 2 == 0) != (parity == SignParity::Even)) continue;
        Rational sum(0);
        for (int i = 0; i < n; ++i)
            sum += slot_sign(mask, i) * values[static_cast<size_t>(i)];
        if (!best || sum > *best) best = sum;
    }
    return *best;
}

Rational s_lg(const Scenario& s) {
    if (s.kind != ScenarioKind::LeggettGarg3)
        throw std::invalid_argument("s_lg: scenario is not leggett-garg");
    const auto e = to_expectations(s);
    return s_signed_max({e.pair_correlations.at("12"), e.pair_correlations.at("13"),
                         e.pair_correlations.at("23")},
                        SignParity::Odd);
}

Rational s_chsh(const Scenario& s) {
    if (s.kind != ScenarioKind::EprBell4)
        throw std::invalid_argument("s_chsh: scenario is not epr-bell");
    const auto e = to_expectations(s);
    return s_signed_max({e.pair_correlations.at("11"), e.pair_correlations.at("12"),
                         e.pair_correlations.at("21"), e.pair_correlations.at("22")},
                        SignParity::Odd);
}

Rational gamma_min_formula(const Scenario& s) {
    if (s.kind == ScenarioKind::LeggettGarg3) {
        const Rational g = (s_lg(s) - 1) / 2;
        return std::max(Rational(0), g);
    }
    if (s.kind == ScenarioKind::EprBell4) {
        const Rational g = s_chsh(s) / 2 - 1;
        return std::max(Rational(0), g);
    }
    throw std::invalid_argument("gamma_min_formula: no closed form for generic scenarios");
}

Rational delta_min_formula(const Scenario& s) {
    // Identical closed forms for both shapes.
    if (s.kind == ScenarioKind::GenericPairwise)
        throw std::invalid_argument("delta_min_formula: no closed form for generic scenarios");
    return gamma_min_formula(s);
}

MeasureResult gamma_min_lp(const Scenario& s) {
    s.validate();
    require_no_signaling(s, "gamma_min_lp");
    const int n = static_cast<int>(s.properties.size());

    LpProblem lp;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        lp.objective.add_term(gamma_var(true, mask), Rational(1));
        lp.objective.add_term(gamma_var(false, mask), Rational(1));
        lp.nonnegative_vars.insert(gamma_var(true, mask));
        lp.nonnegative_vars.insert(gamma_var(false, mask));
    }
    add_quasi_marginals(lp, s, /*signed_split=*/true);

    const LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimal)
        throw std::logic_error("gamma_min_lp: infeasible under no-signaling");

    QuasiDistribution witness;
    witness.order = s.properties;
    Rational total(0);
    witness.mass = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const Rational mu = r.witness.at(gamma_var(true, mask)) - r.witness.at(gamma_var(false, mask));
        if (!is_zero(mu)) witness.atoms[atom_key(mask, n)] = mu;
        total += mu;
        witness.mass += rational_abs(mu);
    }
    if (total != 1) throw std::logic_error("gamma_min_lp: witness mass is not 1");
    if (witness.mass != r.value)
        throw std::logic_error("gamma_min_lp: optimal split is not complementary");
    for (const auto& t : s.tables) {
        const int li = property_slot(s, t.left.property);
        const int ri = property_slot(s, t.right.property);
        for (int x : {+1, -1}) {
            for (int y : {+1, -1}) {
                Rational sum(0);
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (slot_sign(mask, li) != x || slot_sign(mask, ri) != y) continue;
                    const auto it = witness.atoms.find(atom_key(mask, n));
                    if (it != witness.atoms.end()) sum += it->second;
                }
                if (sum != t.prob(x, y))
                    throw std::logic_error("gamma_min_lp: witness marginal mismatch");
            }
        }
    }

    MeasureResult result;
    result.value = witness.mass - 1;
    if (is_negative(result.value)) throw std::logic_error("gamma_min_lp: mass below 1");
    result.quasi = std::move(witness);
    result.closed_form = closed_form_for(s);
    result.agree = !result.closed_form || *result.closed_form == result.value;
    return result;
}

MeasureResult delta_min_lp(const Scenario& s) {
    s.validate();
    require_no_signaling(s, "delta_min_lp");

    std::vector<ContextualVariableId> cvars;
    for (const auto& t : s.tables) {
        cvars.push_back(t.left);
        cvars.push_back(t.right);
    }
    const int k = static_cast<int>(cvars.size());
    auto slot_of = [&](const ContextualVariableId& id) {
        const auto it = std::find(cvars.begin(), cvars.end(), id);
        return static_cast<int>(it - cvars.begin());
    };

    // Mismatch objective over every unordered cross-context pair per property.
    MeasureResult result;
    std::vector<std::pair<int, int>> mismatch_pairs;
    for (const auto& prop : s.properties) {
        const auto contexts = s.contexts_of(prop);
        if (contexts.size() > 2 && result.note.empty())
            result.note = "delta extended beyond two contexts per property: "
                          "mismatch summed over all cross-context pairs";
        for (size_t i = 0; i < contexts.size(); ++i)
            for (size_t j = i + 1; j < contexts.size(); ++j)
                mismatch_pairs.emplace_back(slot_of({prop, contexts[i]}),
                                            slot_of({prop, contexts[j]}));
    }

    LpProblem lp;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int mismatches = 0;
        for (const auto& [a, b] : mismatch_pairs)
            if (slot_sign(mask, a) != slot_sign(mask, b)) ++mismatches;
        lp.nonnegative_vars.insert(lambda_var(mask));
        if (mismatches > 0) lp.objective.add_term(lambda_var(mask), Rational(mismatches));
    }
    for (const auto& t : s.tables) {
        const int li = slot_of(t.left);
        const int ri = slot_of(t.right);
        for (int x : {+1, -1}) {
            for (int y : {+1, -1}) {
                LinearExpr sum;
                for (unsigned mask = 0; mask < (1u << k); ++mask)
                    if (slot_sign(mask, li) == x && slot_sign(mask, ri) == y)
                        sum.add_term(lambda_var(mask), Rational(1));
                lp.equalities.push_back({std::move(sum), t.prob(x, y)});
            }
        }
    }

    const LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimal)
        throw std::logic_error("delta_min_lp: coupling polytope cannot be empty");

    Coupling witness;
    witness.order = cvars;
    Rational total(0);
    Rational recomputed(0);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        const Rational lam = r.witness.at(lambda_var(mask));
        if (is_negative(lam)) throw std::logic_error("delta_min_lp: negative coupling mass");
        if (is_zero(lam)) continue;
        witness.atoms[atom_key(mask, k)] = lam;
        total += lam;
        int mismatches = 0;
        for (const auto& [a, b] : mismatch_pairs)
            if (slot_sign(mask, a) != slot_sign(mask, b)) ++mismatches;
        recomputed += mismatches * lam;
    }
    if (total != 1) throw std::logic_error("delta_min_lp: coupling mass is not 1");
    if (recomputed != r.value) throw std::logic_error("delta_min_lp: delta recomputation mismatch");
    for (const auto& t : s.tables) {
        const int li = slot_of(t.left);
        const int ri = slot_of(t.right);
        for (int x : {+1, -1}) {
            for (int y : {+1, -1}) {
                Rational sum(0);
                for (const auto& [key, lam] : witness.atoms) {
                    const int lx = key[static_cast<size_t>(li)] == '+' ? 1 : -1;
                    const int ly = key[static_cast<size_t>(ri)] == '+' ? 1 : -1;
                    if (lx == x && ly == y) sum += lam;
                }
                if (sum != t.prob(x, y))
                    throw std::logic_error("delta_min_lp: witness marginal mismatch");
            }
        }
    }
    witness.delta = r.value;

    result.value = r.value;
    result.coupling = std::move(witness);
    result.closed_form = closed_form_for(s);
    result.agree = !result.closed_form || *result.closed_form == result.value;
    return result;
}

bool proper_jpd_feasible(const Scenario& s) {
    s.validate();
    const int n = static_cast<int>(s.properties.size());
    LpProblem lp;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        lp.nonnegative_vars.insert(gamma_var(true, mask));
    add_quasi_marginals(lp, s, /*signed_split=*/false);
    return lp_feasible(lp);
}

}  // namespace contexture
