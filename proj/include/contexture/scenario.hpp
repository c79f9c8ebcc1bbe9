#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "contexture/rational.hpp"

namespace contexture {

enum class ScenarioKind { LeggettGarg3, EprBell4, GenericPairwise };

std::string kind_name(ScenarioKind kind);          // "leggett-garg" | "epr-bell" | "generic"
ScenarioKind kind_from_name(const std::string& s);

// One property observed inside one context, e.g. A1 in context "12"
// (the doubly indexed A_{1,2} of the pairwise systems).
struct ContextualVariableId {
    std::string property;
    std::string context;

    auto operator<=>(const ContextualVariableId&) const = default;
    std::string name() const { return property + "@" + context; }
};

// 2x2 joint distribution of one context's pair, outcomes in {+1,-1}.
// probs order: (+,+), (+,-), (-,+), (-,-).
struct ObservedTable {
    std::string context;
    ContextualVariableId left;
    ContextualVariableId right;
    std::array<Rational, 4> probs;

    Rational prob(int left_outcome, int right_outcome) const;
    Rational left_marginal() const { return probs[0] + probs[1]; }    // Pr[left = +1]
    Rational right_marginal() const { return probs[0] + probs[2]; }   // Pr[right = +1]
    Rational correlation() const;                                     // <XY>
    void validate() const;  // entries >= 0, sum exactly 1
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::GenericPairwise;
    std::vector<std::string> properties;
    std::vector<ObservedTable> tables;

    void validate() const;  // shape invariants for the kind
    const ObservedTable& table(const std::string& context) const;
    // All contexts containing the property, in table order.
    std::vector<std::string> contexts_of(const std::string& property) const;
};

struct SignalingViolation {
    std::string property;
    std::string context_a;
    std::string context_b;
    Rational difference;  // marginal(context_a) - marginal(context_b)
};

struct NoSignalingReport {
    bool ok = true;
    std::vector<SignalingViolation> violations;
};

NoSignalingReport check_no_signaling(const Scenario& s);

struct ExpectationVector {
    std::map<std::string, Rational> pair_correlations;  // context -> <XY>
    std::map<std::string, Rational> marginals;          // property -> <X>
    // Derivation-only extras; empty otherwise.
    std::map<std::string, Rational> connection_correlations;  // property -> <X_c1 X_c2>
};

// Exact expectations; throws if the scenario signals (the message names the
// violating property).
ExpectationVector to_expectations(const Scenario& s);

// Inverse of to_expectations for the standard shapes. Throws if some pair
// violates the Frechet bounds -1+|<X>+<Y>| <= <XY> <= 1-|<X>-<Y>|.
Scenario from_expectations(ScenarioKind kind, const ExpectationVector& e);

// Canonical LG / EPR scaffolds (properties, contexts, variable pairing) with
// all-uniform tables; used as shape templates.
Scenario make_leggett_garg();
Scenario make_epr_bell();

// Scenario file format (see README): JSON with kind/properties/tables and
// rational strings.
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
Scenario load_scenario(const std::string& path);

}  // namespace contexture
