#pragma once

// Scenario files: the JSON surface for describing a system (components,
// bindings, operation catalogue, management-task sizing) plus an optional
// simulation section (horizon, queue, priority mode, scripted and sporadic
// requests). Parsing is strict — unknown keys and malformed values are
// rejected with the offending JSON path — and serialize/parse round-trips
// are exact.

#include <optional>
#include <string>
#include <vector>

#include "rtreconf/model.hpp"
#include "rtreconf/simulator.hpp"

namespace rtreconf {

struct WindowSizing {
    Tick window = 0;
    std::int64_t count = 0;

    bool operator==(const WindowSizing&) const = default;
};

struct Scenario {
    std::string name;
    std::string tick_unit; // informational only, never enters a computation
    TaskSet task_set;
    std::vector<ManagementOpSpec> operations;

    // Management-task sizing: at most one of the three sources.
    std::optional<Tick> mgmt_period;
    std::optional<Percent> mgmt_utilization;
    std::optional<WindowSizing> mgmt_window;
    std::optional<Percent> snap_tolerance;

    bool has_simulation = false;
    Tick horizon = 0;
    std::size_t queue_capacity = 16;
    MgmtPriority priority_mode = MgmtPriority::highest;
    std::uint64_t seed = 0;
    std::vector<Request> requests; // arrival instant in enqueue_time
    std::optional<SporadicSpec> sporadic;

    bool operator==(const Scenario&) const = default;
};

// Parses scenario JSON. Errors carry the JSON path of the offending value
// ("components[2].period: ...").
Result<Scenario> parse_scenario(const std::string& json_text);

// Reads and parses a scenario file.
Result<Scenario> load_scenario_file(const std::string& path);

// Canonical JSON rendering; parse(serialize(s)) == s for any parsed s.
std::string serialize_scenario(const Scenario& s);

// Builds the initial SystemState: validates the task set, assigns ranks,
// fills the registry and sizes the management task (applying the snap
// tolerance when given). Requires a sizing source when operations exist.
Result<SystemState> materialize_state(const Scenario& s);

// Builds the simulator configuration from the simulation section.
Result<SimConfig> materialize_sim(const Scenario& s);

} // namespace rtreconf
