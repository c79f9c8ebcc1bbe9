#pragma once

#include "contexture/measures.hpp"
#include "contexture/polyhedra.hpp"
#include "contexture/scenario.hpp"

namespace contexture {

// Fixed naming of the expectation variables for the two standard shapes.
// EPR: obs AB11..AB22, connections cA1,cA2,cB1,cB2, marginals mA1..mB2.
// LG:  obs Q12,Q13,Q23, connections cQ1..cQ3, marginals mQ1..mQ3.
struct ShapeSchema {
    ScenarioKind kind;
    std::vector<std::string> contexts;
    std::vector<std::string> obs_vars;   // aligned with contexts
    std::vector<std::string> properties;
    std::vector<std::string> conn_vars;  // aligned with properties
    std::vector<std::string> marg_vars;  // aligned with properties
    Rational cbd_bound;                  // 6 for EPR, 4 for LG
    Rational delta_const;                // Delta = delta_const - (sum of connections)/2
};

ShapeSchema schema_for(ScenarioKind kind);

// Expectation image of one deterministic joint assignment, with the marginal
// of every context-indexed variable kept separately (a vertex may assign a
// property different values in different contexts, so a single per-property
// marginal is not always well defined; expectations.marginals holds the
// first-context value).
struct VertexImage {
    ExpectationVector expectations;
    std::map<std::string, std::map<std::string, Rational>> context_marginals;  // property -> context -> value
};

struct ProjectionCheck {
    bool vertices_sound = false;
    int membership_samples = 0;
    int membership_failures = 0;
};

struct DerivationReport {
    ScenarioKind kind;
    int nontrivial_count = 0;
    int trivial_count = 0;
    ConstraintSystem derived_system;  // over obs correlations, marginals, delta
    ConstraintSystem paper_system;
    bool equivalent = false;
    ProjectionCheck projection_check;
};

// The consistency system for observed + connection correlations: two
// parity-crossed signed-max families (row labels "cbd-s0"/"cbd-s1") plus the
// Frechet rows of every observed table ("trivial-obs:<ctx>") and connection
// ("trivial-conn:<property>"). EPR: 128 + 28 rows; LG: 32 + 21 rows.
ConstraintSystem build_connection_system(ScenarioKind kind);

// Hand-coded analytic delta bounds: the signed-max expansions of the
// published two-sided S bounds, 0 <= delta, the marginal sign-case rows, and
// the observed Frechet rows.
ConstraintSystem build_paper_delta_system(ScenarioKind kind);

// One image per deterministic assignment of the context-indexed variables
// (2^8 = 256 for EPR, 2^6 = 64 for LG).
std::vector<VertexImage> joint_vertex_images(ScenarioKind kind);

// Soundness: every vertex image satisfies every claimed row (per-context
// marginal lift). Completeness: sample_count points inside claimed, each
// certified inside the convex hull of the vertex images by an exact
// feasibility LP over vertex weights.
ProjectionCheck verify_projection(ScenarioKind kind, const ConstraintSystem& claimed,
                                  int sample_count, uint64_t seed);

// Full appendix pipeline: build the connection system, add the delta-defining
// equality, eliminate the connection correlations in index order, prune, and
// compare with the published bounds; also runs verify_projection on the
// connection system.
DerivationReport derive_delta_bounds(ScenarioKind kind, int projection_samples = 200,
                                     uint64_t projection_seed = 1);

std::string derivation_report_to_json(const DerivationReport& report);

// Canonical "c1*v1 + c2*v2 <= b" rendering used in reports.
std::string row_to_string(const ConstraintRow& row);

}  // namespace contexture
