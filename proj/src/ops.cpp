#include "rtreconf/ops.hpp"

#include <algorithm>
#include <set>

#include "rtreconf/analysis.hpp"

namespace rtreconf {

namespace {

// Final gate for every transform: the candidate set must be clean, then
// ranks are reassigned.
Result<SystemState> finish(SystemState candidate, Errc code_on_violation) {
    auto violations = validate_taskset(candidate.task_set);
    if (!violations.empty())
        return fail<SystemState>(code_on_violation, violations.front().message);
    candidate.task_set = assign_rms_priorities(candidate.task_set);
    return candidate;
}

Result<void> check_params(const Component& c) {
    TaskSet probe;
    probe.components.push_back(c);
    auto violations = validate_taskset(probe);
    if (!violations.empty()) return Error{Errc::invalid_params, violations.front().message};
    return {};
}

} // namespace

Result<SystemState> apply_add(const SystemState& state, const Component& component,
                              const std::vector<Binding>& new_bindings) {
    if (state.task_set.contains(component.id))
        return fail<SystemState>(Errc::duplicate_id, "component " + component.id + " already exists");
    if (auto r = check_params(component); !r) return r.error();

    SystemState next = state;
    next.task_set.components.push_back(component);
    next.task_set.bindings.insert(next.task_set.bindings.end(), new_bindings.begin(),
                                  new_bindings.end());
    return finish(std::move(next), Errc::dangling_binding);
}

Result<SystemState> apply_remove(const SystemState& state, const std::string& target) {
    if (!state.task_set.contains(target))
        return fail<SystemState>(Errc::unknown_id, "no component " + target);

    // Inbound bindings from other components must be rewired first.
    for (const auto& b : state.task_set.bindings) {
        if (b.to.component == target && b.from.component != target)
            return fail<SystemState>(Errc::port_in_use, "component " + target + " still bound from " +
                                                            b.from.component + "." + b.from.port);
    }

    SystemState next = state;
    auto& comps = next.task_set.components;
    comps.erase(std::remove_if(comps.begin(), comps.end(),
                               [&](const Component& c) { return c.id == target; }),
                comps.end());
    auto& binds = next.task_set.bindings;
    binds.erase(std::remove_if(binds.begin(), binds.end(),
                               [&](const Binding& b) { return b.from.component == target; }),
                binds.end());
    return finish(std::move(next), Errc::invalid_params);
}

Result<SystemState> apply_modify_params(const SystemState& state, const std::string& target,
                                        Tick new_wcet, Tick new_period, Tick new_deadline) {
    if (!state.task_set.contains(target))
        return fail<SystemState>(Errc::unknown_id, "no component " + target);

    SystemState next = state;
    for (auto& c : next.task_set.components) {
        if (c.id != target) continue;
        c.wcet = new_wcet;
        c.period = new_period;
        c.deadline = new_deadline;
        if (auto r = check_params(c); !r) return r.error();
        break;
    }
    return finish(std::move(next), Errc::invalid_params);
}

Result<SystemState> apply_rebind(const SystemState& state, const std::vector<Binding>& remove,
                                 const std::vector<Binding>& add) {
    SystemState next = state;
    auto& binds = next.task_set.bindings;
    for (const auto& b : remove) {
        auto it = std::find(binds.begin(), binds.end(), b);
        if (it == binds.end())
            return fail<SystemState>(Errc::missing_binding,
                                     "no binding " + b.from.component + "." + b.from.port + "->" +
                                         b.to.component + "." + b.to.port);
        binds.erase(it);
    }
    binds.insert(binds.end(), add.begin(), add.end());

    // Distinguish the two failure shapes for callers.
    auto violations = validate_taskset(next.task_set);
    for (const auto& v : violations) {
        if (v.rule == "duplicate-required-port")
            return fail<SystemState>(Errc::duplicate_required_port, v.message);
    }
    return finish(std::move(next), Errc::dangling_binding);
}

Result<SystemState> apply_replace(const SystemState& state, const std::string& target,
                                  const Component& replacement) {
    if (!state.task_set.contains(target))
        return fail<SystemState>(Errc::unknown_id, "no component " + target);
    if (replacement.id != target)
        return fail<SystemState>(Errc::bad_payload, "replacement id " + replacement.id +
                                                        " does not match target " + target);
    if (auto r = check_params(replacement); !r) return r.error();

    // Live bindings must survive the port change.
    for (const auto& b : state.task_set.bindings) {
        if (b.from.component == target && !replacement.required_ports.count(b.from.port))
            return fail<SystemState>(Errc::port_drop, "replacement drops bound required port " +
                                                          b.from.port);
        if (b.to.component == target && !replacement.provided_ports.count(b.to.port))
            return fail<SystemState>(Errc::port_drop, "replacement drops bound provided port " +
                                                          b.to.port);
    }

    SystemState next = state;
    for (auto& c : next.task_set.components) {
        if (c.id == target) {
            c = replacement;
            break;
        }
    }
    return finish(std::move(next), Errc::invalid_params);
}

Result<SystemState> apply_request(const SystemState& state, const RequestPayload& payload) {
    return std::visit(
        [&](const auto& p) -> Result<SystemState> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, AddPayload>)
                return apply_add(state, p.component, p.bindings);
            else if constexpr (std::is_same_v<P, RemovePayload>)
                return apply_remove(state, p.target);
            else if constexpr (std::is_same_v<P, ModifyParamsPayload>)
                return apply_modify_params(state, p.target, p.wcet, p.period, p.deadline);
            else if constexpr (std::is_same_v<P, RebindPayload>)
                return apply_rebind(state, p.remove, p.add);
            else
                return apply_replace(state, p.target, p.replacement);
        },
        payload);
}

std::vector<std::string> payload_targets(const RequestPayload& payload) {
    std::set<std::string> ids;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, AddPayload>) {
                for (const auto& b : p.bindings) {
                    if (b.from.component != p.component.id) ids.insert(b.from.component);
                    if (b.to.component != p.component.id) ids.insert(b.to.component);
                }
            } else if constexpr (std::is_same_v<P, RemovePayload>) {
                ids.insert(p.target);
            } else if constexpr (std::is_same_v<P, ModifyParamsPayload>) {
                ids.insert(p.target);
            } else if constexpr (std::is_same_v<P, RebindPayload>) {
                for (const auto& b : p.remove) {
                    ids.insert(b.from.component);
                    ids.insert(b.to.component);
                }
                for (const auto& b : p.add) {
                    ids.insert(b.from.component);
                    ids.insert(b.to.component);
                }
            } else {
                ids.insert(p.target);
            }
        },
        payload);
    return {ids.begin(), ids.end()};
}

} // namespace rtreconf
