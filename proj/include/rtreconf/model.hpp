#pragma once

// Domain model for dynamically reconfigurable periodic component systems:
// components with temporal parameters and ports, bindings between ports,
// the registered management-operation catalogue, the management-task
// configuration, and the request payloads for structural changes.
//
// Everything here is an immutable value; structural changes are pure
// state -> state functions (see ops.hpp).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rtreconf/types.hpp"

namespace rtreconf {

// A periodic component: one activation of cost `wcet` every `period`
// ticks, due `deadline` ticks after release (constrained model,
// wcet <= deadline <= period). `priority` is the fixed-priority rank,
// 0 = highest among components; ranks are assigned rate-monotonically
// and recomputed after every structural change.
struct Component {
    std::string id;
    Tick wcet = 0;
    Tick period = 0;
    Tick deadline = 0;
    int priority = 0;
    std::set<std::string> provided_ports;
    std::set<std::string> required_ports;

    bool operator==(const Component&) const = default;
};

struct PortRef {
    std::string component;
    std::string port;

    bool operator==(const PortRef&) const = default;
    auto operator<=>(const PortRef&) const = default;
};

// A connection from one component's required port to another component's
// provided port. A required port carries at most one binding.
struct Binding {
    PortRef from; // required side
    PortRef to;   // provided side

    bool operator==(const Binding&) const = default;
    auto operator<=>(const Binding&) const = default;
};

struct TaskSet {
    std::vector<Component> components;
    std::vector<Binding> bindings;

    bool operator==(const TaskSet&) const = default;

    const Component* find(const std::string& id) const;
    bool contains(const std::string& id) const { return find(id) != nullptr; }
};

// One registered management-operation kind and its execution cost. The
// five canonical kind names ("add", "remove", "modify_params",
// "modify_bindings", "replace") pin the payload shape a request of that
// kind must carry; any other name is a user extension whose structural
// effect is defined by its payload.
struct ManagementOpSpec {
    std::string kind;
    Tick wcet = 0;

    bool operator==(const ManagementOpSpec&) const = default;
};

// Catalogue of registered operation kinds, keyed by kind name. The
// management task's cost is the maximum wcet over the catalogue and is
// zero (task inert) while the catalogue is empty.
struct OpRegistry {
    std::map<std::string, ManagementOpSpec> specs;

    bool operator==(const OpRegistry&) const = default;

    bool has(const std::string& kind) const { return specs.count(kind) != 0; }
    std::optional<Tick> cost_of(const std::string& kind) const;

    // max wcet over all registered kinds, 0 when empty.
    Tick max_cost() const;
};

// Timing parameters of the periodic management task. The deadline always
// equals the cost: the slot must finish before any component resumes.
struct ManagementTaskConfig {
    Tick cost = 0;
    Tick period = 0;
    Tick deadline = 0;

    bool operator==(const ManagementTaskConfig&) const = default;

    bool inert() const { return cost == 0; }
};

// ---- request payloads -------------------------------------------------

struct AddPayload {
    Component component;
    std::vector<Binding> bindings;
    bool operator==(const AddPayload&) const = default;
};

struct RemovePayload {
    std::string target;
    bool operator==(const RemovePayload&) const = default;
};

struct ModifyParamsPayload {
    std::string target;
    Tick wcet = 0;
    Tick period = 0;
    Tick deadline = 0;
    bool operator==(const ModifyParamsPayload&) const = default;
};

struct RebindPayload {
    std::vector<Binding> remove;
    std::vector<Binding> add;
    bool operator==(const RebindPayload&) const = default;
};

struct ReplacePayload {
    std::string target;
    Component replacement; // replacement.id must equal target
    bool operator==(const ReplacePayload&) const = default;
};

using RequestPayload =
    std::variant<AddPayload, RemovePayload, ModifyParamsPayload, RebindPayload, ReplacePayload>;

// Canonical payload tag, used for kind/payload shape checks and trace output.
enum class PayloadKind { add, remove, modify_params, modify_bindings, replace };

PayloadKind payload_kind(const RequestPayload& p);
const char* payload_kind_name(PayloadKind k);

// A queued sporadic demand for one structural operation. `kind` must name
// a registered operation; the payload defines the structural effect.
struct Request {
    std::string id;
    std::string kind;
    RequestPayload payload;
    Tick enqueue_time = 0;

    bool operator==(const Request&) const = default;
};

// The full reconfigurable system: the running component graph, the
// operation catalogue, and the management-task configuration. Invariant
// (maintained by the admission module): mgmt.cost == registry.max_cost()
// and mgmt.deadline == mgmt.cost.
struct SystemState {
    TaskSet task_set;
    OpRegistry registry;
    ManagementTaskConfig mgmt;

    bool operator==(const SystemState&) const = default;
};

// ---- validation --------------------------------------------------------

struct Violation {
    std::string rule;    // short machine-checkable name, e.g. "duplicate-id"
    std::string subject; // offending component id / port / binding
    std::string message;
};

// Checks every TaskSet invariant and returns one entry per violation;
// an empty report means the set is valid. Violations are data, not
// failures: callers decide what to do with them.
std::vector<Violation> validate_taskset(const TaskSet& ts);

// True when `kind` is one of the five canonical names and pins a payload
// shape; extension kinds accept any payload.
std::optional<PayloadKind> canonical_payload_kind(const std::string& kind);

// Shape check: canonical kinds must carry their matching payload.
bool payload_matches_kind(const std::string& kind, const RequestPayload& payload);

} // namespace rtreconf
