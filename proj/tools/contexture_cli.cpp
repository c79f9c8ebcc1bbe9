// contexture: exact contextuality measures for LG / EPR pairwise systems.
//
// Exit codes: 0 ok, 2 bad input, 3 signaling input, 4 internal solver
// inconsistency, 5 derivation mismatch.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "contexture/derive.hpp"
#include "contexture/random_scenarios.hpp"
#include "contexture/report.hpp"

using namespace contexture;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSignaling = 3;
constexpr int kExitSolver = 4;
constexpr int kExitDerivation = 5;

int thread_count() {
    if (const char* env = std::getenv("CONTEXTURE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
        std::cerr << "warning: ignoring invalid CONTEXTURE_THREADS=" << env << "\n";
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

int run_analyze(const std::string& path, bool json, bool witness) {
    Scenario s;
    try {
        s = load_scenario(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        AnalysisReport report = analyze(s);
        std::cout << (json ? report_to_json(report, witness) : report_to_text(report, witness));
        if (json) std::cout << "\n";
        if (!report_consistent(report)) {
            std::cerr << "error: measures disagree on a no-signaling input\n";
            return kExitSolver;
        }
        return 0;
    } catch (const SignalingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& v : e.report().violations)
            std::cerr << "  " << v.property << ": contexts " << v.context_a << " vs " << v.context_b
                      << " differ by " << to_string(v.difference) << "\n";
        return kExitSignaling;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

int run_random(const RandomSpec& spec, bool json) {
    std::vector<AnalysisReport> reports(spec.count);
    std::vector<std::string> errors(spec.count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < spec.count; i = next.fetch_add(1)) {
            try {
                reports[i] = analyze(random_scenario(spec, i));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    int threads = std::min(thread_count(), spec.count);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int bad = 0;
    int contextual = 0;
    Rational max_discrepancy(0);
    for (int i = 0; i < spec.count; ++i) {  // deterministic order regardless of pool
        if (!errors[i].empty()) {
            std::cerr << "internal error: scenario " << i << ": " << errors[i] << "\n";
            ++bad;
            continue;
        }
        if (json) {
            std::cout << report_to_json(reports[i], false) << "\n";
        } else {
            std::cout << "scenario " << i << ": gamma_min = delta_min = "
                      << pretty_rational(reports[i].gamma_min.value) << "\n";
        }
        contextual += reports[i].gamma_min.value > 0;
        const Rational gap =
            rational_abs(reports[i].gamma_min.value - reports[i].delta_min.value);
        if (gap > max_discrepancy) max_discrepancy = gap;
        if (!report_consistent(reports[i])) {
            const std::string dump = "contexture_reproducer_" + std::to_string(i) + ".json";
            std::ofstream out(dump);
            out << scenario_to_json_text(reports[i].scenario) << "\n";
            std::cerr << "error: measures disagree on scenario " << i
                      << "; reproducer written to " << dump << "\n";
            ++bad;
        }
    }
    std::cout << "summary: " << spec.count << " scenarios, max |gamma_min - delta_min| = "
              << to_string(max_discrepancy) << ", " << contextual << " contextual / "
              << spec.count - contextual << " noncontextual\n";
    return bad == 0 ? 0 : kExitSolver;
}

int run_derive(const std::string& kind_arg, bool json) {
    ScenarioKind kind;
    try {
        kind = kind_from_name(kind_arg);
        if (kind == ScenarioKind::GenericPairwise)
            throw std::invalid_argument("derive: expected 'lg' or 'epr'");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    DerivationReport report = derive_delta_bounds(kind);
    if (json) {
        std::cout << derivation_report_to_json(report) << "\n";
    } else {
        std::cout << "system: " << kind_name(kind) << "\n"
                  << "nontrivial inequalities: " << report.nontrivial_count << "\n"
                  << "trivial inequalities: " << report.trivial_count << "\n"
                  << "derived delta bounds (" << report.derived_system.rows().size() << " rows):\n";
        for (const auto& row : report.derived_system.rows())
            std::cout << "  " << row_to_string(row) << "\n";
        std::cout << "matches published bounds: " << (report.equivalent ? "yes" : "NO") << "\n"
                  << "projection: vertices "
                  << (report.projection_check.vertices_sound ? "sound" : "UNSOUND") << ", "
                  << report.projection_check.membership_failures << "/"
                  << report.projection_check.membership_samples << " membership failures\n";
    }
    const bool ok = report.equivalent && report.projection_check.vertices_sound &&
                    report.projection_check.membership_failures == 0;
    if (!ok) std::cerr << "error: derivation does not match the published bounds\n";
    return ok ? 0 : kExitDerivation;
}

int run_check(const std::string& path) {
    Scenario s;
    try {
        s = load_scenario(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    NoSignalingReport ns = check_no_signaling(s);
    if (!ns.ok) {
        std::cerr << "signaling scenario:\n";
        for (const auto& v : ns.violations)
            std::cerr << "  " << v.property << ": contexts " << v.context_a << " vs " << v.context_b
                      << " differ by " << to_string(v.difference) << "\n";
        return kExitSignaling;
    }
    std::cout << "ok: valid no-signaling " << kind_name(s.kind) << " scenario\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact contextuality measures for pairwise cyclic systems"};
    app.require_subcommand(1);

    std::string path;
    bool json = false;
    bool witness = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute gamma_min and delta_min for a scenario file");
    analyze_cmd->add_option("file", path, "scenario JSON file")->required();
    analyze_cmd->add_flag("--json", json, "machine-readable output");
    analyze_cmd->add_flag("--witness", witness, "include the optimal quasi-distribution / coupling");

    RandomSpec spec;
    std::string kind_arg;
    auto* random_cmd = app.add_subcommand("random", "Analyze a seeded stream of random no-signaling scenarios");
    random_cmd->add_option("--kind", kind_arg, "lg | epr")->required();
    random_cmd->add_option("--count", spec.count, "number of scenarios")->required();
    random_cmd->add_option("--seed", spec.seed, "stream seed")->required();
    random_cmd->add_option("--denominator-bound", spec.denominator_bound,
                           "probability grid denominator (default 64)");
    random_cmd->add_flag("--json", json, "machine-readable output");

    std::string derive_kind;
    auto* derive_cmd = app.add_subcommand("derive", "Re-derive the delta bounds by exact elimination");
    derive_cmd->add_option("system", derive_kind, "lg | epr")->required();
    derive_cmd->add_flag("--json", json, "machine-readable output");

    std::string check_path;
    auto* check_cmd = app.add_subcommand("check", "Validate a scenario file and its no-signaling property");
    check_cmd->add_option("file", check_path, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    if (analyze_cmd->parsed()) return run_analyze(path, json, witness);
    if (random_cmd->parsed()) {
        try {
            spec.kind = kind_from_name(kind_arg);
            if (spec.kind == ScenarioKind::GenericPairwise)
                throw std::invalid_argument("random: expected 'lg' or 'epr'");
            if (spec.count < 1) throw std::invalid_argument("random: count must be >= 1");
            if (spec.denominator_bound < 2)
                throw std::invalid_argument("random: denominator bound must be >= 2");
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInput;
        }
        return run_random(spec, json);
    }
    if (derive_cmd->parsed()) return run_derive(derive_kind, json);
    if (check_cmd->parsed()) return run_check(check_path);
    return kExitInput;
}
