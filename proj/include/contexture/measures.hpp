#pragma once

#include <optional>

#include "contexture/lp.hpp"
#include "contexture/polyhedra.hpp"
#include "contexture/scenario.hpp"

namespace contexture {

// Signed measure over full outcome vectors, one +/-1 per property. Keys are
// outcome strings aligned with `order` ("+-+" means first property +1, second
// -1, ...). Zero atoms are not stored.
struct QuasiDistribution {
    std::vector<std::string> order;          // property order of the key strings
    std::map<std::string, Rational> atoms;   // w -> mu(w)
    Rational mass;                           // M = sum |mu(w)|
};

// Proper jpd over context-indexed outcome vectors, one +/-1 per
// ContextualVariableId, keyed like QuasiDistribution.
struct Coupling {
    std::vector<ContextualVariableId> order;
    std::map<std::string, Rational> atoms;  // v -> lambda(v)
    Rational delta;                         // total cross-context mismatch probability
};

struct MeasureResult {
    Rational value;  // Gamma_min or Delta_min
    std::optional<QuasiDistribution> quasi;
    std::optional<Coupling> coupling;
    std::optional<Rational> closed_form;  // present for the LG / EPR shapes
    bool agree = true;                    // value == closed_form when present
    std::string note;                     // e.g. the generic >=3-context extension flag
};

// Exact maximum of +/-x1 +/- ... +/- xn over sign vectors with the stated
// parity of minus signs.
Rational s_signed_max(const std::vector<Rational>& values, SignParity parity);

// Odd-parity signed maxima of the observed pair correlations.
Rational s_lg(const Scenario& s);    // requires LeggettGarg3
Rational s_chsh(const Scenario& s);  // requires EprBell4

// Closed forms: max{0, (S_LG - 1)/2} and max{0, S_CHSH/2 - 1}.
Rational gamma_min_formula(const Scenario& s);
Rational delta_min_formula(const Scenario& s);

// Minimal-L1-mass signed measure reproducing every observed table as a
// marginal; value is Gamma_min = M - 1. The witness is verified before
// returning.
MeasureResult gamma_min_lp(const Scenario& s);

// Minimal-mismatch proper coupling of the context-indexed variables; value is
// Delta_min. The witness is verified before returning.
MeasureResult delta_min_lp(const Scenario& s);

// True iff a proper (nonnegative) jpd over the properties reproduces every
// observed table.
bool proper_jpd_feasible(const Scenario& s);

}  // namespace contexture
