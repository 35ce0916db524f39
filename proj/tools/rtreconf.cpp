// Command-line front end: analyze / admit / simulate / mgmt-period over
// JSON scenario files. Exit status: 0 success (schedulable, accepted,
// zero misses), 1 analytic negative, 2 usage or validation error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rtreconf/admission.hpp"
#include "rtreconf/analysis.hpp"
#include "rtreconf/scenario.hpp"
#include "rtreconf/simulator.hpp"

namespace {

using namespace rtreconf;

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string utilization_text(Tick cost, Tick period) {
    std::ostringstream os;
    os << cost << "/" << period << " = " << std::fixed << std::setprecision(3)
       << (period > 0 ? 100.0 * static_cast<double>(cost) / static_cast<double>(period) : 0.0)
       << "%";
    return os.str();
}

void print_mgmt_line(const ManagementTaskConfig& mgmt) {
    if (mgmt.inert()) {
        std::cout << "mgmt: inert (cost=0)\n";
    } else {
        std::cout << "mgmt: cost=" << mgmt.cost << " period=" << mgmt.period
                  << " deadline=" << mgmt.deadline << " utilization="
                  << utilization_text(mgmt.cost, mgmt.period) << "\n";
    }
}

void print_response_table(const SystemState& state, const ResponseTimeReport& report) {
    std::size_t idw = 9;
    for (const auto& c : state.task_set.components) idw = std::max(idw, c.id.size());
    std::cout << std::left << std::setw(static_cast<int>(idw) + 2) << "component" << std::right
              << std::setw(5) << "rank" << std::setw(6) << "wcet" << std::setw(8) << "period"
              << std::setw(10) << "deadline" << std::setw(10) << "response"
              << "  met\n";
    for (const auto& entry : report.entries) {
        const Component* c = state.task_set.find(entry.id);
        std::cout << std::left << std::setw(static_cast<int>(idw) + 2) << entry.id << std::right
                  << std::setw(5) << (c ? c->priority : -1) << std::setw(6) << (c ? c->wcet : 0)
                  << std::setw(8) << (c ? c->period : 0) << std::setw(10) << entry.deadline;
        if (entry.response)
            std::cout << std::setw(10) << *entry.response;
        else
            std::cout << std::setw(10) << "diverged";
        std::cout << "  " << (entry.met() ? "yes" : "NO") << "\n";
    }
}

int cmd_analyze(const std::string& scenario_path) {
    auto sc = load_scenario_file(scenario_path);
    if (!sc) return usage_error(sc.error().message);
    auto st = materialize_state(sc.value());
    if (!st) return usage_error(st.error().message);
    const SystemState& state = st.value();

    if (!sc.value().name.empty()) std::cout << "scenario: " << sc.value().name << "\n";
    print_mgmt_line(state.mgmt);
    auto report = response_time_with_mgmt(state.task_set, state.mgmt);
    print_response_table(state, report);
    std::cout << "verdict: " << (report.schedulable ? "SCHEDULABLE" : "UNSCHEDULABLE") << "\n";
    return report.schedulable ? 0 : 1;
}

int cmd_admit(const std::string& scenario_path, const std::string& op_kind, Tick op_cost) {
    auto sc = load_scenario_file(scenario_path);
    if (!sc) return usage_error(sc.error().message);
    auto st = materialize_state(sc.value());
    if (!st) return usage_error(st.error().message);

    auto outcome = register_operation(st.value(), ManagementOpSpec{op_kind, op_cost});
    if (!outcome) return usage_error(outcome.error().message);
    const AdmissionDecision& d = outcome.value().decision;

    std::cout << "operation: " << op_kind << " cost=" << op_cost << "\n";
    std::cout << "decision: " << (d.accepted ? "ACCEPTED" : "REJECTED")
              << " reason=" << admission_reason_name(d.reason) << "\n";
    std::cout << "mgmt cost: " << d.before.cost << " -> " << d.after.cost << "\n";
    std::cout << "mgmt deadline: " << d.before.deadline << " -> " << d.after.deadline << "\n";
    if (!d.detail.empty()) std::cout << "detail: " << d.detail << "\n";
    if (d.report) print_response_table(outcome.value().state, *d.report);
    return d.accepted ? 0 : 1;
}

int cmd_simulate(const std::string& scenario_path, std::optional<Tick> until,
                 const std::string& trace_path, std::optional<std::uint64_t> seed) {
    auto sc = load_scenario_file(scenario_path);
    if (!sc) return usage_error(sc.error().message);
    auto cfgr = materialize_sim(sc.value());
    if (!cfgr) return usage_error(cfgr.error().message);
    SimConfig cfg = std::move(cfgr).value();
    if (seed && cfg.sporadic) cfg.sporadic->seed = *seed;

    auto simr = Simulation::create(std::move(cfg));
    if (!simr) return usage_error(simr.error().message);
    Simulation& sim = simr.value();
    for (const auto& w : sim.warnings()) std::cerr << "warning: " << w << "\n";

    const Tick stop = until.value_or(sim.horizon());
    if (auto r = sim.run_until(stop); !r) return usage_error(r.error().message);

    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) return usage_error("cannot open trace file " + trace_path);
        for (const auto& ev : sim.trace()) out << format_trace_event(ev) << "\n";
        out.flush();
        if (!out) return usage_error("cannot write trace file " + trace_path);
    }

    const SimSummary sum = sim.summary();
    if (!sc.value().name.empty()) std::cout << "scenario: " << sc.value().name << "\n";
    std::cout << "ran until: " << sim.now() << " of horizon " << sim.horizon() << "\n";

    std::size_t idw = 9;
    for (const auto& cs : sum.components) idw = std::max(idw, cs.id.size());
    std::cout << std::left << std::setw(static_cast<int>(idw) + 2) << "component" << std::right
              << std::setw(9) << "released" << std::setw(10) << "completed" << std::setw(7)
              << "missed" << std::setw(12) << "worst_resp\n";
    for (const auto& cs : sum.components) {
        std::cout << std::left << std::setw(static_cast<int>(idw) + 2) << cs.id << std::right
                  << std::setw(9) << cs.released << std::setw(10) << cs.completed << std::setw(7)
                  << cs.missed;
        if (cs.worst_response)
            std::cout << std::setw(11) << *cs.worst_response << "\n";
        else
            std::cout << std::setw(11) << "-" << "\n";
    }

    std::int64_t committed = 0;
    Tick lat_min = 0;
    Tick lat_max = 0;
    long double lat_sum = 0;
    for (const auto& rs : sum.requests) {
        if (rs.outcome != RequestOutcome::committed || !rs.latency) continue;
        if (committed == 0 || *rs.latency < lat_min) lat_min = *rs.latency;
        if (committed == 0 || *rs.latency > lat_max) lat_max = *rs.latency;
        lat_sum += static_cast<long double>(*rs.latency);
        ++committed;
    }
    std::cout << "requests: arrived=" << sum.requests.size() << " committed=" << sum.total_commits
              << " rejected=" << sum.total_rejections << " overflow=" << sum.total_overflows
              << "\n";
    if (committed > 0) {
        std::cout << "latency: min=" << lat_min << " avg=" << std::fixed << std::setprecision(2)
                  << static_cast<double>(lat_sum / committed) << " max=" << lat_max << "\n";
    } else {
        std::cout << "latency: n/a\n";
    }
    std::cout << "misses: " << sum.total_misses << "\n";
    std::cout << "interference: " << sum.total_interference << "\n";
    return sum.total_misses == 0 ? 0 : 1;
}

int cmd_mgmt_period(std::optional<Tick> op_cost, const std::string& util_text, Tick window,
                    std::int64_t count, const std::string& snap_text,
                    const std::string& scenario_path) {
    const bool util_mode = !util_text.empty();
    const bool window_mode = window > 0 || count > 0;
    if (util_mode == window_mode)
        return usage_error("give exactly one sizing mode: --util, or --window with --count");

    Tick period = 0;
    Tick cost = op_cost.value_or(0);
    if (util_mode) {
        if (!op_cost) return usage_error("--util needs --op-cost");
        auto util = Percent::parse(util_text);
        if (!util) return usage_error("--util: expected a plain decimal like 7.5");
        auto p = period_from_utilization(cost, *util);
        if (!p) return usage_error(p.error().message);
        period = p.value();
    } else {
        if (window < 1 || count < 1) return usage_error("--window and --count must both be given");
        auto p = period_from_window(window, count);
        if (!p) return usage_error(p.error().message);
        period = p.value();
    }

    if (!snap_text.empty()) {
        if (scenario_path.empty()) return usage_error("--snap needs --scenario for the period pool");
        auto tol = Percent::parse(snap_text);
        if (!tol) return usage_error("--snap: expected a plain decimal like 10");
        auto sc = load_scenario_file(scenario_path);
        if (!sc) return usage_error(sc.error().message);
        period = snap_period_to_existing(period, sc.value().task_set, *tol);
    }

    std::cout << "period: " << period << "\n";
    if (cost > 0) std::cout << "utilization: " << utilization_text(cost, period) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schedulability analysis and deterministic simulation of "
                 "dynamically reconfigurable real-time component systems"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string trace_path;
    std::string op_kind;
    std::string util_text;
    std::string snap_text;
    Tick op_cost = 0;
    Tick until = 0;
    Tick window = 0;
    std::int64_t count = 0;
    std::uint64_t seed = 0;

    auto* analyze = app.add_subcommand("analyze", "response-time analysis of a scenario");
    analyze->add_option("--scenario", scenario_path, "scenario JSON file")->required();

    auto* admit =
        app.add_subcommand("admit", "acceptance test for registering a management operation");
    admit->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    admit->add_option("--op-kind", op_kind, "operation kind to register")->required();
    admit->add_option("--op-cost", op_cost, "operation cost in ticks")->required();

    auto* simulate = app.add_subcommand("simulate", "run the deterministic simulator");
    simulate->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    auto* until_opt = simulate->add_option("--until", until, "stop instant (default: horizon)");
    simulate->add_option("--trace", trace_path, "write the event trace to this file");
    auto* seed_opt = simulate->add_option("--seed", seed, "override the sporadic seed");

    auto* mgmt = app.add_subcommand("mgmt-period", "size the management-task period");
    auto* cost_opt = mgmt->add_option("--op-cost", op_cost, "operation cost in ticks");
    mgmt->add_option("--util", util_text, "utilization budget percent (e.g. 10 or 7.5)");
    mgmt->add_option("--window", window, "window length in ticks");
    mgmt->add_option("--count", count, "activations guaranteed per window");
    mgmt->add_option("--snap", snap_text, "snap tolerance percent (needs --scenario)");
    mgmt->add_option("--scenario", scenario_path, "scenario JSON file for the period pool");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) return cmd_analyze(scenario_path);
    if (admit->parsed()) return cmd_admit(scenario_path, op_kind, op_cost);
    if (simulate->parsed())
        return cmd_simulate(scenario_path,
                            until_opt->count() > 0 ? std::optional<Tick>(until) : std::nullopt,
                            trace_path,
                            seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed)
                                                  : std::nullopt);
    if (mgmt->parsed())
        return cmd_mgmt_period(cost_opt->count() > 0 ? std::optional<Tick>(op_cost) : std::nullopt,
                               util_text, window, count, snap_text, scenario_path);
    return 2;
}
