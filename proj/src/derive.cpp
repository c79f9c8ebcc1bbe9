#include "contexture/derive.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "contexture/splitmix.hpp"

namespace contexture {

using ordered_json = nlohmann::ordered_json;

namespace {

Scenario shape_scenario(ScenarioKind kind) {
    if (kind == ScenarioKind::LeggettGarg3) return make_leggett_garg();
    if (kind == ScenarioKind::EprBell4) return make_epr_bell();
    throw std::invalid_argument("derive: only the leggett-garg and epr-bell shapes are supported");
}

// Variable classification for a schema.
struct VarIndex {
    std::map<std::string, std::string> obs_context;    // obs var -> context
    std::map<std::string, std::string> conn_property;  // conn var -> property
    std::map<std::string, std::string> marg_property;  // marg var -> property
};

VarIndex index_schema(const ShapeSchema& schema) {
    VarIndex idx;
    for (size_t i = 0; i < schema.contexts.size(); ++i)
        idx.obs_context[schema.obs_vars[i]] = schema.contexts[i];
    for (size_t i = 0; i < schema.properties.size(); ++i) {
        idx.conn_property[schema.conn_vars[i]] = schema.properties[i];
        idx.marg_property[schema.marg_vars[i]] = schema.properties[i];
    }
    return idx;
}

std::vector<std::string> all_vars(const ShapeSchema& schema, bool with_delta) {
    std::vector<std::string> vars = schema.obs_vars;
    vars.insert(vars.end(), schema.conn_vars.begin(), schema.conn_vars.end());
    vars.insert(vars.end(), schema.marg_vars.begin(), schema.marg_vars.end());
    if (with_delta) vars.push_back("delta");
    return vars;
}

std::vector<std::string> obs_marg_delta_vars(const ShapeSchema& schema) {
    std::vector<std::string> vars = schema.obs_vars;
    vars.insert(vars.end(), schema.marg_vars.begin(), schema.marg_vars.end());
    vars.push_back("delta");
    return vars;
}

void add_observed_frechet_rows(ConstraintSystem& sys, const ShapeSchema& schema) {
    const Scenario base = shape_scenario(schema.kind);
    for (size_t i = 0; i < schema.contexts.size(); ++i) {
        const auto& t = base.table(schema.contexts[i]);
        const std::string& corr = schema.obs_vars[i];
        const size_t lp = static_cast<size_t>(
            std::find(schema.properties.begin(), schema.properties.end(), t.left.property) -
            schema.properties.begin());
        const size_t rp = static_cast<size_t>(
            std::find(schema.properties.begin(), schema.properties.end(), t.right.property) -
            schema.properties.begin());
        const std::string& ma = schema.marg_vars[lp];
        const std::string& mb = schema.marg_vars[rp];
        const std::string label = "trivial-obs:" + schema.contexts[i];
        auto row = [&](int sc, int sa, int sb) {
            LinearExpr lhs;
            lhs.add_term(corr, Rational(sc));
            lhs.add_term(ma, Rational(sa));
            lhs.add_term(mb, Rational(sb));
            sys.add_leq(std::move(lhs), Rational(1), label);
        };
        // -1 + |<A>+<B>| <= <AB> <= 1 - |<A>-<B>|, absolute values expanded.
        row(-1, +1, +1);
        row(-1, -1, -1);
        row(+1, +1, -1);
        row(+1, -1, +1);
    }
}

void add_connection_frechet_rows(ConstraintSystem& sys, const ShapeSchema& schema) {
    for (size_t i = 0; i < schema.properties.size(); ++i) {
        const std::string& c = schema.conn_vars[i];
        const std::string& m = schema.marg_vars[i];
        const std::string label = "trivial-conn:" + schema.properties[i];
        // Both marginals coincide, so the two upper bounds collapse to c <= 1.
        LinearExpr lo1;
        lo1.add_term(c, Rational(-1));
        lo1.add_term(m, Rational(2));
        sys.add_leq(std::move(lo1), Rational(1), label);
        LinearExpr lo2;
        lo2.add_term(c, Rational(-1));
        lo2.add_term(m, Rational(-2));
        sys.add_leq(std::move(lo2), Rational(1), label);
        sys.add_leq(LinearExpr::variable(c), Rational(1), label);
    }
}

void add_cbd_rows(ConstraintSystem& sys, const ShapeSchema& schema, SignParity obs_parity,
                  const std::string& label) {
    const SignParity conn_parity =
        obs_parity == SignParity::Even ? SignParity::Odd : SignParity::Even;
    const int n_obs = static_cast<int>(schema.obs_vars.size());
    const int n_conn = static_cast<int>(schema.conn_vars.size());
    for (const auto& sigma : parity_sign_vectors(n_obs, obs_parity)) {
        for (const auto& tau : parity_sign_vectors(n_conn, conn_parity)) {
            LinearExpr lhs;
            for (int i = 0; i < n_obs; ++i)
                lhs.add_term(schema.obs_vars[static_cast<size_t>(i)], Rational(sigma[static_cast<size_t>(i)]));
            for (int i = 0; i < n_conn; ++i)
                lhs.add_term(schema.conn_vars[static_cast<size_t>(i)], Rational(tau[static_cast<size_t>(i)]));
            sys.add_leq(std::move(lhs), schema.cbd_bound, label);
        }
    }
}

}  // namespace

ShapeSchema schema_for(ScenarioKind kind) {
    ShapeSchema s;
    s.kind = kind;
    if (kind == ScenarioKind::EprBell4) {
        s.contexts = {"11", "12", "21", "22"};
        s.obs_vars = {"AB11", "AB12", "AB21", "AB22"};
        s.properties = {"A1", "A2", "B1", "B2"};
        s.conn_vars = {"cA1", "cA2", "cB1", "cB2"};
        s.marg_vars = {"mA1", "mA2", "mB1", "mB2"};
        s.cbd_bound = 6;
        s.delta_const = 2;
    } else if (kind == ScenarioKind::LeggettGarg3) {
        s.contexts = {"12", "13", "23"};
        s.obs_vars = {"Q12", "Q13", "Q23"};
        s.properties = {"Q1", "Q2", "Q3"};
        s.conn_vars = {"cQ1", "cQ2", "cQ3"};
        s.marg_vars = {"mQ1", "mQ2", "mQ3"};
        s.cbd_bound = 4;
        s.delta_const = Rational(3, 2);
    } else {
        throw std::invalid_argument("schema_for: no schema for generic scenarios");
    }
    return s;
}

ConstraintSystem build_connection_system(ScenarioKind kind) {
    const ShapeSchema schema = schema_for(kind);
    ConstraintSystem sys(all_vars(schema, /*with_delta=*/false));
    add_cbd_rows(sys, schema, SignParity::Even, "cbd-s0");
    add_cbd_rows(sys, schema, SignParity::Odd, "cbd-s1");
    add_observed_frechet_rows(sys, schema);
    add_connection_frechet_rows(sys, schema);
    return sys;
}

ConstraintSystem build_paper_delta_system(ScenarioKind kind) {
    const ShapeSchema schema = schema_for(kind);
    ConstraintSystem sys(obs_marg_delta_vars(schema));
    const int n_obs = static_cast<int>(schema.obs_vars.size());
    const Rational half(1, 2);

    // Lower branch: (signed obs sum)/2 - delta <= upper-minus-shift constants.
    const Rational lower_rhs = schema.kind == ScenarioKind::EprBell4 ? Rational(1) : half;
    const SignParity lower_parity = SignParity::Odd;
    for (const auto& sigma : parity_sign_vectors(n_obs, lower_parity)) {
        LinearExpr lhs;
        for (int i = 0; i < n_obs; ++i)
            lhs.add_term(schema.obs_vars[static_cast<size_t>(i)], half * sigma[static_cast<size_t>(i)]);
        lhs.add_term("delta", Rational(-1));
        sys.add_leq(std::move(lhs), lower_rhs, "paper-lower");
    }
    // Upper branch: EPR bounds delta by the odd-parity maximum again, LG by
    // the even-parity one.
    const SignParity upper_parity =
        schema.kind == ScenarioKind::EprBell4 ? SignParity::Odd : SignParity::Even;
    const Rational upper_rhs = schema.kind == ScenarioKind::EprBell4 ? Rational(5) : Rational(7, 2);
    for (const auto& sigma : parity_sign_vectors(n_obs, upper_parity)) {
        LinearExpr lhs;
        for (int i = 0; i < n_obs; ++i)
            lhs.add_term(schema.obs_vars[static_cast<size_t>(i)], half * sigma[static_cast<size_t>(i)]);
        lhs.add_term("delta", Rational(1));
        sys.add_leq(std::move(lhs), upper_rhs, "paper-upper");
    }

    LinearExpr neg_delta;
    neg_delta.add_term("delta", Rational(-1));
    sys.add_leq(std::move(neg_delta), Rational(0), "paper-nonneg");

    const Rational marg_rhs = schema.kind == ScenarioKind::EprBell4 ? Rational(4) : Rational(3);
    const int n_marg = static_cast<int>(schema.marg_vars.size());
    for (int mask = 0; mask < (1 << n_marg); ++mask) {
        LinearExpr lhs;
        lhs.add_term("delta", Rational(1));
        for (int i = 0; i < n_marg; ++i)
            lhs.add_term(schema.marg_vars[static_cast<size_t>(i)], Rational((mask >> i) & 1 ? -1 : 1));
        sys.add_leq(std::move(lhs), marg_rhs, "paper-marg");
    }

    add_observed_frechet_rows(sys, schema);
    return sys;
}

std::vector<VertexImage> joint_vertex_images(ScenarioKind kind) {
    const Scenario base = shape_scenario(kind);
    std::vector<ContextualVariableId> cvars;
    for (const auto& t : base.tables) {
        cvars.push_back(t.left);
        cvars.push_back(t.right);
    }
    const int k = static_cast<int>(cvars.size());
    auto value_of = [&](unsigned mask, const ContextualVariableId& id) {
        const auto it = std::find(cvars.begin(), cvars.end(), id);
        const int slot = static_cast<int>(it - cvars.begin());
        return (mask >> slot) & 1 ? -1 : 1;
    };

    std::vector<VertexImage> images;
    images.reserve(1u << k);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        VertexImage img;
        for (const auto& t : base.tables)
            img.expectations.pair_correlations[t.context] =
                value_of(mask, t.left) * value_of(mask, t.right);
        for (const auto& prop : base.properties) {
            const auto contexts = base.contexts_of(prop);
            Rational product(1);
            for (size_t i = 0; i < contexts.size(); ++i) {
                const int v = value_of(mask, {prop, contexts[i]});
                img.context_marginals[prop][contexts[i]] = v;
                product *= v;
            }
            img.expectations.connection_correlations[prop] = product;
            img.expectations.marginals[prop] = img.context_marginals[prop].begin()->second;
        }
        images.push_back(std::move(img));
    }
    return images;
}

namespace {

// Evaluate a claimed row at a vertex, lifting per-property marginal variables
// to the context(s) the row's provenance label points at.
Rational evaluate_row_at_vertex(const ConstraintRow& row, const VertexImage& img,
                                const ShapeSchema& schema, const VarIndex& idx,
                                const Scenario& base) {
    Rational value(0);
    for (const auto& [name, coeff] : row.lhs.coefficients()) {
        if (auto it = idx.obs_context.find(name); it != idx.obs_context.end()) {
            value += coeff * img.expectations.pair_correlations.at(it->second);
            continue;
        }
        if (auto it = idx.conn_property.find(name); it != idx.conn_property.end()) {
            value += coeff * img.expectations.connection_correlations.at(it->second);
            continue;
        }
        const auto mit = idx.marg_property.find(name);
        if (mit == idx.marg_property.end())
            throw std::invalid_argument("verify_projection: unknown variable " + name);
        const std::string& prop = mit->second;
        const auto& per_context = img.context_marginals.at(prop);
        if (row.label.rfind("trivial-obs:", 0) == 0) {
            value += coeff * per_context.at(row.label.substr(12));
        } else {
            // Connection rows (and anything unlabeled) see the property through
            // all of its contexts symmetrically.
            Rational avg(0);
            for (const auto& [ctx, v] : per_context) avg += v;
            avg /= static_cast<int>(per_context.size());
            value += coeff * avg;
        }
    }
    (void)schema;
    (void)base;
    return value;
}

}  // namespace

ProjectionCheck verify_projection(ScenarioKind kind, const ConstraintSystem& claimed,
                                  int sample_count, uint64_t seed) {
    const ShapeSchema schema = schema_for(kind);
    const VarIndex idx = index_schema(schema);
    const Scenario base = shape_scenario(kind);
    const auto images = joint_vertex_images(kind);

    ProjectionCheck check;
    check.vertices_sound = true;
    for (const auto& img : images) {
        for (const auto& row : claimed.rows()) {
            const Rational v = evaluate_row_at_vertex(row, img, schema, idx, base);
            const bool ok = row.rel == Relation::Eq ? v == row.rhs : v <= row.rhs;
            if (!ok) {
                check.vertices_sound = false;
                break;
            }
        }
        if (!check.vertices_sound) break;
    }

    // Membership LP scaffolding: weights over vertex images reproducing a
    // point's correlations, connections and (per-context) marginals.
    auto in_hull = [&](const std::map<std::string, Rational>& point) {
        LpProblem lp;
        LinearExpr mass;
        for (size_t j = 0; j < images.size(); ++j) {
            const std::string w = "w" + std::to_string(j);
            lp.nonnegative_vars.insert(w);
            mass.add_term(w, Rational(1));
        }
        lp.equalities.push_back({std::move(mass), Rational(1)});
        auto match = [&](auto value_of_image, const Rational& target) {
            LinearExpr combo;
            for (size_t j = 0; j < images.size(); ++j)
                combo.add_term("w" + std::to_string(j), value_of_image(images[j]));
            lp.equalities.push_back({std::move(combo), target});
        };
        for (size_t i = 0; i < schema.contexts.size(); ++i) {
            const std::string ctx = schema.contexts[i];
            match([&](const VertexImage& im) { return im.expectations.pair_correlations.at(ctx); },
                  point.at(schema.obs_vars[i]));
        }
        for (size_t i = 0; i < schema.properties.size(); ++i) {
            const std::string prop = schema.properties[i];
            match([&](const VertexImage& im) { return im.expectations.connection_correlations.at(prop); },
                  point.at(schema.conn_vars[i]));
            for (const auto& ctx : base.contexts_of(prop)) {
                match([&](const VertexImage& im) { return im.context_marginals.at(prop).at(ctx); },
                      point.at(schema.marg_vars[i]));
            }
        }
        return lp_feasible(lp);
    };

    // Sample directions: every reference facet normal first (so a deleted or
    // displaced facet is probed deterministically), then seeded random ones.
    const ConstraintSystem reference = build_connection_system(kind);
    SplitMix64 rng(seed);
    const auto vars = claimed.variables();
    std::map<std::string, Rational> previous;
    for (int i = 0; i < sample_count; ++i) {
        LinearExpr objective;
        if (i < static_cast<int>(reference.rows().size())) {
            objective = reference.rows()[static_cast<size_t>(i)].lhs;
        } else {
            for (const auto& v : vars) {
                const int c = static_cast<int>(rng.next_below(6)) - 3;
                if (c != 0) objective.add_term(v, Rational(c));
            }
            if (objective.empty()) objective = LinearExpr::variable(vars.front());
        }
        const LpResult r = maximize_over(claimed, objective);
        ++check.membership_samples;
        if (r.status != LpStatus::Optimal) {
            ++check.membership_failures;
            continue;
        }
        std::map<std::string, Rational> point;
        for (const auto& v : vars) {
            const auto it = r.witness.find(v);
            point[v] = it == r.witness.end() ? Rational(0) : it->second;
        }
        if (i % 2 == 1 && !previous.empty()) {
            for (auto& [v, val] : point) val = (val + previous.at(v)) / 2;
        }
        previous = point;
        if (!in_hull(point)) ++check.membership_failures;
    }
    return check;
}

DerivationReport derive_delta_bounds(ScenarioKind kind, int projection_samples,
                                     uint64_t projection_seed) {
    const ShapeSchema schema = schema_for(kind);
    const ConstraintSystem conn_sys = build_connection_system(kind);

    DerivationReport report;
    report.kind = kind;
    for (const auto& row : conn_sys.rows()) {
        if (row.label.rfind("cbd", 0) == 0) ++report.nontrivial_count;
        else if (row.label.rfind("trivial", 0) == 0) ++report.trivial_count;
    }

    ConstraintSystem full(all_vars(schema, /*with_delta=*/true));
    for (const auto& row : conn_sys.rows()) full.add_row(row);
    LinearExpr delta_def = LinearExpr::variable("delta");
    for (const auto& c : schema.conn_vars) delta_def.add_term(c, Rational(1, 2));
    full.add_eq(std::move(delta_def), schema.delta_const, "delta-def");

    report.derived_system = fm_eliminate(full, schema.conn_vars);
    report.paper_system = build_paper_delta_system(kind);
    report.equivalent = systems_equivalent(report.derived_system, report.paper_system);
    report.projection_check = verify_projection(kind, conn_sys, projection_samples, projection_seed);
    return report;
}

std::string row_to_string(const ConstraintRow& row) {
    std::string out;
    for (const auto& [name, c] : row.lhs.coefficients()) {
        const bool first = out.empty();
        const bool neg = is_negative(c);
        const Rational mag = rational_abs(c);
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += name;
    }
    if (out.empty()) out = "0";
    out += row.rel == Relation::Eq ? " = " : " <= ";
    out += to_string(row.rhs);
    return out;
}

std::string derivation_report_to_json(const DerivationReport& report) {
    ordered_json doc;
    doc["kind"] = kind_name(report.kind);
    doc["nontrivial_count"] = report.nontrivial_count;
    doc["trivial_count"] = report.trivial_count;
    doc["equivalent"] = report.equivalent;
    doc["projection"] = {{"vertices_sound", report.projection_check.vertices_sound},
                         {"membership_samples", report.projection_check.membership_samples},
                         {"membership_failures", report.projection_check.membership_failures}};
    auto rows_json = [](const ConstraintSystem& sys) {
        ordered_json arr = ordered_json::array();
        for (const auto& row : sys.rows()) arr.push_back(row_to_string(row));
        return arr;
    };
    doc["derived_system"] = rows_json(report.derived_system);
    doc["paper_system"] = rows_json(report.paper_system);
    return doc.dump(2);
}

}  // namespace contexture
