#include "rtreconf/model.hpp"

#include <algorithm>
#include <set>

namespace rtreconf {

const Component* TaskSet::find(const std::string& id) const {
    for (const auto& c : components)
        if (c.id == id) return &c;
    return nullptr;
}

std::optional<Tick> OpRegistry::cost_of(const std::string& kind) const {
    auto it = specs.find(kind);
    if (it == specs.end()) return std::nullopt;
    return it->second.wcet;
}

Tick OpRegistry::max_cost() const {
    Tick m = 0;
    for (const auto& [kind, spec] : specs) m = std::max(m, spec.wcet);
    return m;
}

PayloadKind payload_kind(const RequestPayload& p) {
    switch (p.index()) {
        case 0: return PayloadKind::add;
        case 1: return PayloadKind::remove;
        case 2: return PayloadKind::modify_params;
        case 3: return PayloadKind::modify_bindings;
        default: return PayloadKind::replace;
    }
}

const char* payload_kind_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::add: return "add";
        case PayloadKind::remove: return "remove";
        case PayloadKind::modify_params: return "modify_params";
        case PayloadKind::modify_bindings: return "modify_bindings";
        case PayloadKind::replace: return "replace";
    }
    return "unknown";
}

std::optional<PayloadKind> canonical_payload_kind(const std::string& kind) {
    if (kind == "add") return PayloadKind::add;
    if (kind == "remove") return PayloadKind::remove;
    if (kind == "modify_params") return PayloadKind::modify_params;
    if (kind == "modify_bindings") return PayloadKind::modify_bindings;
    if (kind == "replace") return PayloadKind::replace;
    return std::nullopt;
}

bool payload_matches_kind(const std::string& kind, const RequestPayload& payload) {
    auto canonical = canonical_payload_kind(kind);
    if (!canonical) return true; // extension kinds carry any payload
    return *canonical == payload_kind(payload);
}

namespace {

void check_component_params(const Component& c, std::vector<Violation>& out) {
    if (c.wcet < 1)
        out.push_back({"bad-wcet", c.id, "wcet < 1 for " + c.id});
    if (c.period < c.wcet)
        out.push_back({"period-lt-wcet", c.id, "period < wcet for " + c.id});
    if (c.deadline > c.period)
        out.push_back({"deadline-gt-period", c.id, "deadline > period for " + c.id});
    if (c.deadline < c.wcet)
        out.push_back({"deadline-lt-wcet", c.id, "deadline < wcet for " + c.id});
}

std::string binding_str(const Binding& b) {
    return b.from.component + "." + b.from.port + "->" + b.to.component + "." + b.to.port;
}

} // namespace

std::vector<Violation> validate_taskset(const TaskSet& ts) {
    std::vector<Violation> out;

    std::set<std::string> seen;
    for (const auto& c : ts.components) {
        if (!seen.insert(c.id).second)
            out.push_back({"duplicate-id", c.id, "duplicate component id " + c.id});
        check_component_params(c, out);
    }

    std::set<PortRef> used_required;
    for (const auto& b : ts.bindings) {
        const Component* from = ts.find(b.from.component);
        const Component* to = ts.find(b.to.component);
        if (!from || !from->required_ports.count(b.from.port)) {
            out.push_back({"dangling-binding", binding_str(b),
                           "required endpoint " + b.from.component + "." + b.from.port +
                               " does not exist"});
        }
        if (!to || !to->provided_ports.count(b.to.port)) {
            out.push_back({"dangling-binding", binding_str(b),
                           "provided endpoint " + b.to.component + "." + b.to.port +
                               " does not exist"});
        }
        if (!used_required.insert(b.from).second) {
            out.push_back({"duplicate-required-port", b.from.component + "." + b.from.port,
                           "required port " + b.from.component + "." + b.from.port +
                               " bound more than once"});
        }
    }
    return out;
}

} // namespace rtreconf
