#include "contexture/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace contexture {

using ordered_json = nlohmann::ordered_json;

SignalingError::SignalingError(NoSignalingReport report)
    : std::runtime_error("signaling scenario: property " +
                         (report.violations.empty() ? std::string("?")
                                                    : report.violations.front().property) +
                         " has context-dependent marginals"),
      report_(std::move(report)) {}

AnalysisReport analyze(const Scenario& s) {
    s.validate();
    AnalysisReport report;
    report.scenario = s;
    report.no_signaling = check_no_signaling(s);
    if (!report.no_signaling.ok) throw SignalingError(report.no_signaling);

    if (s.kind == ScenarioKind::LeggettGarg3) report.s_value = s_lg(s);
    else if (s.kind == ScenarioKind::EprBell4) report.s_value = s_chsh(s);

    report.gamma_min = gamma_min_lp(s);
    report.delta_min = delta_min_lp(s);
    report.equal = report.gamma_min.value == report.delta_min.value;
    return report;
}

bool report_consistent(const AnalysisReport& report) {
    return report.equal && report.gamma_min.agree && report.delta_min.agree;
}

std::string pretty_rational(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", to_double(q));
    return to_string(q) + " (~ " + buf + ")";
}

namespace {

ordered_json witness_json(const QuasiDistribution& w) {
    ordered_json j;
    j["order"] = w.order;
    ordered_json atoms;
    for (const auto& [key, mu] : w.atoms) atoms[key] = to_string(mu);
    j["atoms"] = std::move(atoms);
    j["mass"] = to_string(w.mass);
    return j;
}

ordered_json witness_json(const Coupling& w) {
    ordered_json j;
    ordered_json order = ordered_json::array();
    for (const auto& id : w.order) order.push_back(id.name());
    j["order"] = std::move(order);
    ordered_json atoms;
    for (const auto& [key, lam] : w.atoms) atoms[key] = to_string(lam);
    j["atoms"] = std::move(atoms);
    j["delta"] = to_string(w.delta);
    return j;
}

ordered_json measure_json(const MeasureResult& m, bool include_witnesses) {
    ordered_json j;
    j["value"] = to_string(m.value);
    if (m.closed_form) j["closed_form"] = to_string(*m.closed_form);
    j["agree"] = m.agree;
    if (!m.note.empty()) j["note"] = m.note;
    if (include_witnesses) {
        if (m.quasi) j["witness"] = witness_json(*m.quasi);
        if (m.coupling) j["witness"] = witness_json(*m.coupling);
    }
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report, bool include_witnesses) {
    ordered_json doc;
    doc["scenario"] = ordered_json::parse(scenario_to_json_text(report.scenario));
    ordered_json ns;
    ns["ok"] = report.no_signaling.ok;
    ns["violations"] = ordered_json::array();
    for (const auto& v : report.no_signaling.violations)
        ns["violations"].push_back({{"property", v.property},
                                    {"context_a", v.context_a},
                                    {"context_b", v.context_b},
                                    {"difference", to_string(v.difference)}});
    doc["no_signaling"] = std::move(ns);
    if (report.s_value) doc["s_value"] = to_string(*report.s_value);
    doc["gamma_min"] = measure_json(report.gamma_min, include_witnesses);
    doc["delta_min"] = measure_json(report.delta_min, include_witnesses);
    doc["equal"] = report.equal;
    return doc.dump(2);
}

std::string report_to_text(const AnalysisReport& report, bool include_witnesses) {
    std::ostringstream out;
    out << "scenario: " << kind_name(report.scenario.kind) << ", "
        << report.scenario.properties.size() << " properties, " << report.scenario.tables.size()
        << " contexts\n";
    out << "no-signaling: " << (report.no_signaling.ok ? "ok" : "VIOLATED") << "\n";
    if (report.s_value) {
        out << (report.scenario.kind == ScenarioKind::EprBell4 ? "S_CHSH" : "S_LG") << ": "
            << pretty_rational(*report.s_value) << "\n";
    }
    out << "gamma_min: " << pretty_rational(report.gamma_min.value) << "\n";
    out << "delta_min: " << pretty_rational(report.delta_min.value) << "\n";
    if (report.gamma_min.closed_form)
        out << "closed form: " << pretty_rational(*report.gamma_min.closed_form)
            << (report.gamma_min.agree && report.delta_min.agree ? " (both measures agree)"
                                                                 : " (DISAGREEMENT)")
            << "\n";
    out << "gamma_min == delta_min: " << (report.equal ? "yes" : "NO") << "\n";
    if (!report.delta_min.note.empty()) out << "note: " << report.delta_min.note << "\n";
    if (include_witnesses) {
        if (report.gamma_min.quasi) {
            out << "quasi-distribution (order";
            for (const auto& p : report.gamma_min.quasi->order) out << " " << p;
            out << "):\n";
            for (const auto& [key, mu] : report.gamma_min.quasi->atoms)
                out << "  mu(" << key << ") = " << pretty_rational(mu) << "\n";
        }
        if (report.delta_min.coupling) {
            out << "coupling (order";
            for (const auto& id : report.delta_min.coupling->order) out << " " << id.name();
            out << "):\n";
            for (const auto& [key, lam] : report.delta_min.coupling->atoms)
                out << "  lambda(" << key << ") = " << pretty_rational(lam) << "\n";
        }
    }
    return out.str();
}

}  // namespace contexture
