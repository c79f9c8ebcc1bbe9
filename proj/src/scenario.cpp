#include "contexture/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace contexture {

using ordered_json = nlohmann::ordered_json;

std::string kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::LeggettGarg3: return "leggett-garg";
        case ScenarioKind::EprBell4: return "epr-bell";
        case ScenarioKind::GenericPairwise: return "generic";
    }
    throw std::logic_error("kind_name: bad kind");
}

ScenarioKind kind_from_name(const std::string& s) {
    if (s == "leggett-garg" || s == "lg") return ScenarioKind::LeggettGarg3;
    if (s == "epr-bell" || s == "epr") return ScenarioKind::EprBell4;
    if (s == "generic") return ScenarioKind::GenericPairwise;
    throw std::invalid_argument("unknown scenario kind '" + s + "'");
}

Rational ObservedTable::prob(int left_outcome, int right_outcome) const {
    const int idx = (left_outcome == 1 ? 0 : 2) + (right_outcome == 1 ? 0 : 1);
    return probs[idx];
}

Rational ObservedTable::correlation() const {
    return probs[0] - probs[1] - probs[2] + probs[3];
}

void ObservedTable::validate() const {
    Rational sum(0);
    for (const auto& p : probs) {
        if (is_negative(p))
            throw std::invalid_argument("table " + context + ": negative probability");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("table " + context + ": probabilities sum to " +
                                              to_string(sum) + ", not 1");
}

void Scenario::validate() const {
    std::set<std::string> props(properties.begin(), properties.end());
    if (props.size() != properties.size())
        throw std::invalid_argument("scenario: duplicate property names");
    std::set<std::string> contexts;
    for (const auto& t : tables) {
        t.validate();
        if (!contexts.insert(t.context).second)
            throw std::invalid_argument("scenario: duplicate context " + t.context);
        if (!props.count(t.left.property) || !props.count(t.right.property))
            throw std::invalid_argument("table " + t.context + ": unknown property");
        if (t.left.property == t.right.property)
            throw std::invalid_argument("table " + t.context + ": pairs a property with itself");
        if (t.left.context != t.context || t.right.context != t.context)
            throw std::invalid_argument("table " + t.context + ": mislabeled variable context");
    }
    if (kind == ScenarioKind::LeggettGarg3) {
        if (properties.size() != 3 || tables.size() != 3)
            throw std::invalid_argument("leggett-garg scenario needs 3 properties and 3 tables");
        std::set<std::set<std::string>> pairs;
        for (const auto& t : tables) pairs.insert({t.left.property, t.right.property});
        if (pairs.size() != 3)
            throw std::invalid_argument("leggett-garg scenario needs one table per pair");
    } else if (kind == ScenarioKind::EprBell4) {
        if (props != std::set<std::string>{"A1", "A2", "B1", "B2"})
            throw std::invalid_argument("epr-bell scenario needs properties A1, A2, B1, B2");
        std::set<std::set<std::string>> pairs;
        for (const auto& t : tables) {
            if (t.left.property[0] != 'A' || t.right.property[0] != 'B')
                throw std::invalid_argument("table " + t.context +
                                            ": epr-bell pairs are (A_i, B_j)");
            pairs.insert({t.left.property, t.right.property});
        }
        if (tables.size() != 4 || pairs.size() != 4)
            throw std::invalid_argument("epr-bell scenario needs the 4 (A_i, B_j) tables");
    }
}

const ObservedTable& Scenario::table(const std::string& context) const {
    for (const auto& t : tables)
        if (t.context == context) return t;
    throw std::invalid_argument("no table for context " + context);
}

std::vector<std::string> Scenario::contexts_of(const std::string& property) const {
    std::vector<std::string> out;
    for (const auto& t : tables)
        if (t.left.property == property || t.right.property == property)
            out.push_back(t.context);
    return out;
}

NoSignalingReport check_no_signaling(const Scenario& s) {
    NoSignalingReport report;
    for (const auto& prop : s.properties) {
        std::vector<std::pair<std::string, Rational>> marginals;
        for (const auto& t : s.tables) {
            if (t.left.property == prop) marginals.emplace_back(t.context, t.left_marginal());
            else if (t.right.property == prop) marginals.emplace_back(t.context, t.right_marginal());
        }
        for (size_t i = 1; i < marginals.size(); ++i) {
            if (marginals[i].second != marginals[0].second) {
                report.ok = false;
                report.violations.push_back({prop, marginals[0].first, marginals[i].first,
                                             marginals[0].second - marginals[i].second});
            }
        }
    }
    return report;
}

ExpectationVector to_expectations(const Scenario& s) {
    s.validate();
    const auto ns = check_no_signaling(s);
    if (!ns.ok)
        throw std::invalid_argument("to_expectations: signaling scenario (property " +
                                    ns.violations.front().property + " has context-dependent marginal)");
    ExpectationVector e;
    for (const auto& prop : s.properties) {
        for (const auto& t : s.tables) {
            if (t.left.property == prop) {
                e.marginals[prop] = 2 * t.left_marginal() - 1;
                break;
            }
            if (t.right.property == prop) {
                e.marginals[prop] = 2 * t.right_marginal() - 1;
                break;
            }
        }
    }
    for (const auto& t : s.tables) {
        const Rational direct = t.correlation();
        // Same value through the p/a/b parameterization; checked, not trusted.
        const Rational via_marginals = (4 * t.probs[0] - 1) - (2 * t.left_marginal() - 1) -
                                       (2 * t.right_marginal() - 1);
        if (direct != via_marginals)
            throw std::logic_error("to_expectations: correlation routes disagree");
        e.pair_correlations[t.context] = direct;
    }
    return e;
}

Scenario from_expectations(ScenarioKind kind, const ExpectationVector& e) {
    Scenario s;
    if (kind == ScenarioKind::LeggettGarg3) s = make_leggett_garg();
    else if (kind == ScenarioKind::EprBell4) s = make_epr_bell();
    else throw std::invalid_argument("from_expectations: generic scenarios carry no fixed shape");

    for (auto& t : s.tables) {
        const Rational mx = e.marginals.at(t.left.property);
        const Rational my = e.marginals.at(t.right.property);
        const Rational c = e.pair_correlations.at(t.context);
        const Rational lower = -1 + rational_abs(mx + my);
        const Rational upper = 1 - rational_abs(mx - my);
        if (c < lower || c > upper)
            throw std::invalid_argument(
                "from_expectations: pair (" + t.left.property + "," + t.right.property +
                ") violates " + to_string(lower) + " <= <XY> <= " + to_string(upper) +
                " (got " + to_string(c) + ")");
        t.probs[0] = (1 + mx + my + c) / 4;
        t.probs[1] = (1 + mx - my - c) / 4;
        t.probs[2] = (1 - mx + my - c) / 4;
        t.probs[3] = (1 - mx - my + c) / 4;
    }
    s.validate();
    return s;
}

Scenario make_leggett_garg() {
    Scenario s;
    s.kind = ScenarioKind::LeggettGarg3;
    s.properties = {"Q1", "Q2", "Q3"};
    const Rational q(1, 4);
    // In context "ij" (i < j) the earlier variable Q_{i,j} sits on the left.
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
        const std::string ctx = std::to_string(i) + std::to_string(j);
        ObservedTable t;
        t.context = ctx;
        t.left = {"Q" + std::to_string(i), ctx};
        t.right = {"Q" + std::to_string(j), ctx};
        t.probs = {q, q, q, q};
        s.tables.push_back(std::move(t));
    }
    return s;
}

Scenario make_epr_bell() {
    Scenario s;
    s.kind = ScenarioKind::EprBell4;
    s.properties = {"A1", "A2", "B1", "B2"};
    const Rational q(1, 4);
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            const std::string ctx = std::to_string(i) + std::to_string(j);
            ObservedTable t;
            t.context = ctx;
            t.left = {"A" + std::to_string(i), ctx};
            t.right = {"B" + std::to_string(j), ctx};
            t.probs = {q, q, q, q};
            s.tables.push_back(std::move(t));
        }
    }
    return s;
}

namespace {

Rational json_rational(const ordered_json& j, const std::string& where) {
    if (!j.is_string())
        throw std::invalid_argument(where + ": rationals must be exact strings, got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(where + ": bad rational '" + j.get<std::string>() + "'");
    }
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& err) {
        throw std::invalid_argument(std::string("scenario parse error: ") + err.what());
    }
    if (doc.contains("scenario")) doc = doc["scenario"];  // accept analyze --json reports

    Scenario s;
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw std::invalid_argument("scenario: missing \"kind\"");
    s.kind = kind_from_name(doc["kind"].get<std::string>());
    if (!doc.contains("properties") || !doc["properties"].is_array())
        throw std::invalid_argument("scenario: missing \"properties\"");
    for (const auto& p : doc["properties"]) s.properties.push_back(p.get<std::string>());
    if (!doc.contains("tables") || !doc["tables"].is_array())
        throw std::invalid_argument("scenario: missing \"tables\"");
    for (const auto& tj : doc["tables"]) {
        ObservedTable t;
        t.context = tj.at("context").get<std::string>();
        t.left = {tj.at("left").get<std::string>(), t.context};
        t.right = {tj.at("right").get<std::string>(), t.context};
        const auto& pj = tj.at("probs");
        const std::array<std::string, 4> keys{"++", "+-", "-+", "--"};
        for (size_t k = 0; k < 4; ++k)
            t.probs[k] = json_rational(pj.at(keys[k]), "table " + t.context + " probs[" + keys[k] + "]");
        s.tables.push_back(std::move(t));
    }
    s.validate();
    return s;
}

std::string scenario_to_json_text(const Scenario& s) {
    ordered_json doc;
    doc["kind"] = kind_name(s.kind);
    doc["properties"] = s.properties;
    doc["tables"] = ordered_json::array();
    for (const auto& t : s.tables) {
        ordered_json tj;
        tj["context"] = t.context;
        tj["left"] = t.left.property;
        tj["right"] = t.right.property;
        tj["probs"] = {{"++", to_string(t.probs[0])},
                       {"+-", to_string(t.probs[1])},
                       {"-+", to_string(t.probs[2])},
                       {"--", to_string(t.probs[3])}};
        doc["tables"].push_back(std::move(tj));
    }
    return doc.dump(2);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str());
}

}  // namespace contexture
