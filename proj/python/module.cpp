// Thin python bindings. Rationals cross the boundary as exact strings
// ("3/4", "0.25", "2"); structured results come back as parsed JSON-shaped
// dicts via the same serializers the CLI uses.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "contexture/derive.hpp"
#include "contexture/random_scenarios.hpp"
#include "contexture/report.hpp"

namespace py = pybind11;
using namespace contexture;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(j.dump());
}

Scenario scenario_from_arg(const py::object& arg) {
    if (py::isinstance<py::str>(arg)) return scenario_from_json_text(arg.cast<std::string>());
    py::module_ json = py::module_::import("json");
    return scenario_from_json_text(json.attr("dumps")(arg).cast<std::string>());
}

RandomSpec spec_from_args(const std::string& kind, int count, uint64_t seed, int denominator_bound) {
    RandomSpec spec;
    spec.kind = kind_from_name(kind);
    spec.count = count;
    spec.seed = seed;
    spec.denominator_bound = denominator_bound;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_contexture, m) {
    m.doc() = "Exact contextuality measures for pairwise cyclic systems";

    m.def(
        "analyze",
        [](const py::object& scenario, bool witness) {
            AnalysisReport report = analyze(scenario_from_arg(scenario));
            return json_to_py(nlohmann::ordered_json::parse(report_to_json(report, witness)));
        },
        py::arg("scenario"), py::arg("witness") = false,
        "Full analysis of a scenario (dict or JSON string): no-signaling check, "
        "gamma_min, delta_min, closed forms. Raises ValueError on signaling input.");

    m.def(
        "check_no_signaling",
        [](const py::object& scenario) {
            NoSignalingReport ns = check_no_signaling(scenario_from_arg(scenario));
            py::list violations;
            for (const auto& v : ns.violations)
                violations.append(py::dict(py::arg("property") = v.property,
                                           py::arg("context_a") = v.context_a,
                                           py::arg("context_b") = v.context_b,
                                           py::arg("difference") = to_string(v.difference)));
            return py::dict(py::arg("ok") = ns.ok, py::arg("violations") = violations);
        },
        py::arg("scenario"));

    m.def(
        "random_scenario",
        [](const std::string& kind, int count, uint64_t seed, int index, int denominator_bound) {
            Scenario s = random_scenario(spec_from_args(kind, count, seed, denominator_bound), index);
            return json_to_py(nlohmann::ordered_json::parse(scenario_to_json_text(s)));
        },
        py::arg("kind"), py::arg("count"), py::arg("seed"), py::arg("index"),
        py::arg("denominator_bound") = 64,
        "The index-th scenario of the seeded stream, as a scenario dict.");

    m.def(
        "derive",
        [](const std::string& kind) {
            DerivationReport report = derive_delta_bounds(kind_from_name(kind));
            return json_to_py(nlohmann::ordered_json::parse(derivation_report_to_json(report)));
        },
        py::arg("kind"), "Re-derive the delta bounds for 'lg' or 'epr' by exact elimination.");

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SignalingError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
